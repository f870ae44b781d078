mod common;

use std::sync::Arc;

use common::{c3_covers, intro, words, zoo};
use fundament_core::cohomology::{
    class_of_extension, cohom_space_of, extension_from_cocycle, fiber_cocycle, inflate_into, x2, y2, CohomClass,
    CohomSpace,
};
use fundament_core::fprod::fiber_product;
use fundament_core::fundament::inflate_cover;
use fundament_core::linalg::Matrix;
use fundament_core::module::GModule;
use fundament_core::search::find_isomorphism_over;
use fundament_core::{named, Cover, FiniteGroup, GroupHom};
use proptest::prelude::*;

fn spaces() -> Vec<Arc<CohomSpace>> {
    let c2 = Arc::new(FiniteGroup::cyclic(2));
    let c3 = Arc::new(FiniteGroup::cyclic(3));
    let v4 = Arc::new(named::elementary_abelian(2, 2));
    let s3 = Arc::new(named::symmetric(3));
    let w = Matrix::from_rows(2, 2, vec![0, 1, 1, 1]);
    let modules = [
        GModule::trivial(&c2, 2, 1),
        GModule::trivial(&v4, 2, 1),
        GModule::trivial(&c3, 3, 1),
        GModule::from_character(&c2, 3, &[1, 2]).unwrap(),
        GModule::from_generator_matrices(c3.clone(), 2, 2, &[w]).unwrap(),
        GModule::trivial(&s3, 2, 1),
        GModule::trivial(&s3, 3, 1),
    ];
    modules
        .into_iter()
        .map(|m| {
            let g = m.group().clone();
            cohom_space_of(&g, &Arc::new(m)).unwrap()
        })
        .collect()
}

#[test]
fn extensions_round_trip_on_every_class() {
    for space in spaces() {
        let a = space.module();
        for c in space.classes() {
            let ext = extension_from_cocycle(&c.representative()).unwrap();
            assert_eq!(ext.cover.source().order(), space.group().order() * a.size());
            assert_eq!(ext.cover.kernel().order(), a.size());
            assert_eq!(class_of_extension(&space, &ext.cover, &ext.kernel, &ext.ident).unwrap(), c);
        }
    }
}

/// `π_i: K → A` on the kernel of `y2(values)`, read from the coordinates.
fn projection(fp: &fundament_core::fprod::FiberProduct, s: &fundament_core::cohomology::DualPairS, i: usize) -> Matrix {
    let a = s.space().module();
    let k = s.kernel();
    let cols: Vec<Vec<u32>> = k.basis().iter().map(|&b| a.decode(fp.tuple(b)[i] % a.size() as u32)).collect();
    Matrix::from_columns(a.dim(), &cols)
}

#[test]
fn x2_after_y2_reproduces_values() {
    for space in spaces().into_iter().filter(|s| s.group().order() <= 4) {
        let classes = space.classes();
        for w in words(classes.len(), 3) {
            let values: Vec<CohomClass> = w.iter().map(|&i| classes[i].clone()).collect();
            let fp = y2(&space, &values).unwrap();
            let s = x2(fp.structure_map(), &space).unwrap();
            assert_eq!(s.dual().dim(), values.len());
            for (i, v) in values.iter().enumerate() {
                let coords = s.dual().coordinates(&projection(&fp, &s, i)).unwrap();
                assert_eq!(&s.apply(&coords), v, "{w:?} at {i}");
            }
        }
    }
}

#[test]
fn y2_after_x2_reproduces_covers() {
    let (c2, eta0, eta1) = intro();
    let (c3, split, nonsplit) = c3_covers();
    let f2 = cohom_space_of(&c2, &Arc::new(GModule::trivial(&c2, 2, 1))).unwrap();
    let f3 = cohom_space_of(&c3, &Arc::new(GModule::trivial(&c3, 3, 1))).unwrap();
    for (base, space, pool) in [(&c2, &f2, [eta0, eta1]), (&c3, &f3, [split, nonsplit])] {
        for w in words(2, 3) {
            let pi = fiber_product(base, &w.iter().map(|&i| pool[i].clone()).collect::<Vec<_>>()).unwrap();
            let s = x2(pi.structure_map(), space).unwrap();
            let back = y2(space, s.images()).unwrap();
            assert!(find_isomorphism_over(back.structure_map(), pi.structure_map()).is_some(), "{w:?}");
        }
    }
}

#[test]
fn pushing_forward_gives_a_map_of_extensions() {
    for space in spaces().into_iter().filter(|s| s.module().size() <= 4 && s.group().order() <= 6) {
        let a = space.module();
        let field = space.field();
        let classes = space.classes();
        for (c1, c2) in classes.iter().flat_map(|x| classes.iter().map(move |y| (x, y))) {
            let f = fiber_cocycle(&[c1.representative(), c2.representative()]).unwrap();
            let k = f.module().clone();
            let ext_k = extension_from_cocycle(&f).unwrap();
            let one = field.one();
            for (x, y) in [(one, 0), (0, one), (one, one), (field.generator(), one)] {
                let mut beta = Matrix::zero(a.dim(), 2 * a.dim());
                for (j, e) in [x, y].into_iter().enumerate() {
                    let m = field.matrix(e);
                    for r in 0..a.dim() {
                        for s in 0..a.dim() {
                            beta.set(r, j * a.dim() + s, m.get(r, s));
                        }
                    }
                }
                let pushed = f.push_forward(&beta, a).unwrap();
                let ext_l = extension_from_cocycle(&pushed).unwrap();
                let (nk, na) = (k.size() as u32, a.size() as u32);
                let p = a.characteristic();
                let table: Vec<u32> = ext_k
                    .cover
                    .source()
                    .elements()
                    .map(|z| (z / nk) * na + a.encode(&beta.mul_vec(&k.decode(z % nk), p)))
                    .collect();
                let hom = GroupHom::new(ext_k.cover.source().clone(), ext_l.cover.source().clone(), table).unwrap();
                assert!(hom.is_surjective());
                assert_eq!(hom.then(ext_l.cover.hom()).unwrap(), *ext_k.cover.hom());
                assert_eq!(
                    class_of_extension(&space, &ext_l.cover, &ext_l.kernel, &ext_l.ident).unwrap(),
                    space.class_of(&pushed).unwrap()
                );
            }
        }
    }
}

/// `(θ: X ↠ X/N, F_p on X/N)` from the zoo, for small quotients.
fn inflation_case(gi: usize, ni: usize, p: u32) -> Option<(Cover, Arc<CohomSpace>, Arc<CohomSpace>)> {
    let lat = &zoo()[gi % zoo().len()];
    let theta = lat.quotient(ni % lat.len()).clone();
    if theta.target().order() > 12 {
        return None;
    }
    let a = Arc::new(GModule::trivial(theta.target(), p, 1));
    let space = cohom_space_of(theta.target(), &a).unwrap();
    let inflated = Arc::new(a.inflate(&theta).unwrap());
    let big = cohom_space_of(theta.source(), &inflated).unwrap();
    Some((theta, space, big))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inflation_is_linear(gi in any::<usize>(), ni in any::<usize>(), p in prop::sample::select(vec![2u32, 3]), i in any::<usize>(), j in any::<usize>(), lam in any::<usize>()) {
        let Some((theta, space, big)) = inflation_case(gi, ni, p) else { return Ok(()); };
        let classes = space.classes();
        let (x, y) = (&classes[i % classes.len()], &classes[j % classes.len()]);
        let lam = lam % space.field().order();
        let lhs = inflate_into(&theta, &x.add(&y.scale(lam)).unwrap(), &big).unwrap();
        let ix = inflate_into(&theta, x, &big).unwrap();
        let iy = inflate_into(&theta, y, &big).unwrap();
        prop_assert_eq!(lhs, ix.add(&iy.scale(lam)).unwrap());
    }

    #[test]
    fn duality_commutes_with_inflation(gi in any::<usize>(), ni in any::<usize>(), p in prop::sample::select(vec![2u32, 3]), w in prop::collection::vec(any::<usize>(), 1..=2)) {
        let Some((theta, space, big)) = inflation_case(gi, ni, p) else { return Ok(()); };
        let classes = space.classes();
        let values: Vec<CohomClass> = w.iter().map(|&i| classes[i % classes.len()].clone()).collect();
        let fp = y2(&space, &values).unwrap();
        prop_assume!(fp.carrier().order() * theta.kernel().order() <= 400);
        let pi = fp.structure_map();
        let s = x2(pi, &space).unwrap();
        let hat = inflate_cover(pi, &theta).unwrap();
        let s_hat = x2(&hat, &big).unwrap();
        prop_assert_eq!(s_hat.dual().dim(), s.dual().dim());
        let inflated: Vec<Vec<usize>> = s.images().iter().map(|c| inflate_into(&theta, c, &big).unwrap().coordinates().to_vec()).collect();
        prop_assert_eq!(s_hat.image(), big.field().rref(&inflated));
    }
}

#[test]
fn quotient_cover_classes_match_extensions() {
    // C4 ↠ C2 is the non-split extension; the quotient of C2×C2 is split.
    let (c2, eta0, eta1) = intro();
    let space = cohom_space_of(&c2, &Arc::new(GModule::trivial(&c2, 2, 1))).unwrap();
    let s0 = x2(&eta0, &space).unwrap();
    let s1 = x2(&eta1, &space).unwrap();
    assert!(s0.images()[0].is_zero());
    assert!(!s1.images()[0].is_zero());
}
