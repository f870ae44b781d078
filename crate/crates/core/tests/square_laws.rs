mod common;

use common::laws::{self, WIDTH};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn single_square_laws(r in prop::collection::vec(any::<usize>(), WIDTH)) {
        let failed = laws::single_square(&r);
        prop_assert!(failed.is_empty(), "{:?}", failed);
    }

    #[test]
    fn pasting_laws(r in prop::collection::vec(any::<usize>(), WIDTH)) {
        let failed = laws::pasting(&r);
        prop_assert!(failed.is_empty(), "{:?}", failed);
    }

    #[test]
    fn cube_law(r in prop::collection::vec(any::<usize>(), WIDTH)) {
        let failed = laws::cube(&r);
        prop_assert!(failed.is_empty(), "{:?}", failed);
    }
}
