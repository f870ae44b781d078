//! Square laws evaluated on one randomized instance. Each check returns the
//! names of the laws that failed, so the property suite and the acceptance
//! run share one definition.

use fundament_core::lattice::{all_subgroups, is_indecomposable, normal_subgroups_within};
use fundament_core::squares::{
    compact_by_indecomposable_bottom, compose_horizontal, compose_vertical, is_cartesian, is_cartesian_by_kernels,
    is_cartesian_by_pairs, is_compact_cartesian_exhaustive, is_semi_cartesian, semi_cartesian_criteria, transpose,
    CommSquare,
};
use fundament_core::Subgroup;

use super::{random_pasting, random_square_indices, Lattice};

/// Number of random words each instance consumes.
pub const WIDTH: usize = 8;

fn fail(out: &mut Vec<&'static str>, ok: bool, law: &'static str) {
    if !ok {
        out.push(law);
    }
}

/// Whether some `γ: G ↠ B` has `γ ∘ top = left`, by tabulating `top(h) ↦ left(h)`.
fn left_factors_through_top(sq: &CommSquare) -> bool {
    let mut table = vec![u32::MAX; sq.top().target().order()];
    sq.corner().elements().all(|h| {
        let slot = &mut table[sq.top().apply(h) as usize];
        let want = sq.left().apply(h);
        let fresh = *slot == u32::MAX || *slot == want;
        *slot = want;
        fresh
    })
}

/// Whether `e ↦ (top(e), left(e))` maps the subgroup onto `G ×_A B`.
fn pairs_cover_fiber_product(sq: &CommSquare, e: &Subgroup) -> bool {
    let b = sq.left().target().order();
    let mut seen = std::collections::HashSet::new();
    for &x in e.elements() {
        seen.insert(sq.top().apply(x) as usize * b + sq.left().apply(x) as usize);
    }
    let fiber = sq.bottom().target().order() * sq.bottom().kernel().order() * sq.right().kernel().order();
    seen.len() == fiber
}

fn sorted(mut v: Vec<Subgroup>) -> Vec<Subgroup> {
    v.sort();
    v.dedup();
    v
}

/// Laws of a single square.
pub fn single_square(r: &[usize]) -> Vec<&'static str> {
    let mut out = Vec::new();
    let (lat, [c, t, l, a]) = random_square_indices(r);
    let sq = lat.square(c, t, l, a);
    let cart = is_cartesian(&sq);
    let semi = is_semi_cartesian(&sq);

    fail(
        &mut out,
        cart == is_cartesian_by_kernels(&sq) && cart == is_cartesian_by_pairs(&sq),
        "cartesian characterizations",
    );
    fail(&mut out, semi_cartesian_criteria(&sq).iter().all(|&x| x == semi), "semi-cartesian characterizations");
    fail(&mut out, !cart || semi, "cartesian implies semi-cartesian");
    fail(
        &mut out,
        cart == is_cartesian(&transpose(&sq)) && semi == is_semi_cartesian(&transpose(&sq)),
        "transpose symmetry",
    );

    let bottom_indec = is_indecomposable(sq.bottom());
    if cart {
        fail(
            &mut out,
            bottom_indec == is_indecomposable(sq.top()),
            "cartesian: bottom indecomposable iff top indecomposable",
        );
    }
    if bottom_indec {
        let factors = left_factors_through_top(&sq);
        let kernel_inside = sq.top().kernel().is_subgroup_of(sq.left().kernel());
        fail(
            &mut out,
            semi == !factors && factors == kernel_inside,
            "indecomposable bottom: semi iff no factorization",
        );
    }
    if cart && bottom_indec {
        let fast = compact_by_indecomposable_bottom(&sq);
        fail(&mut out, fast == Some(is_compact_cartesian_exhaustive(&sq).unwrap()), "compactness fast path");
    }
    if semi {
        // Every factorization of the right edge through X/N_t1 keeps the square semi-cartesian.
        let twisted = lat.above(t).into_iter().filter(|&t1| lat.normals[t1].is_subgroup_of(&lat.normals[a]));
        let ok = twisted.into_iter().all(|t1| is_semi_cartesian(&lat.square(c, t1, l, a)));
        fail(&mut out, ok, "twisted square stays semi-cartesian");
    }
    if cart {
        fail(&mut out, lattice_correspondence(&sq), "lattice correspondence of kernels");
        fail(&mut out, no_proper_semi_subsquare(&sq), "semi-cartesian subsquare of a cartesian square is full");
    }
    out
}

/// `N ↦ left(N)` is a bijection from the normal subgroups inside `Ker top`
/// onto those inside `Ker bottom`.
fn lattice_correspondence(sq: &CommSquare) -> bool {
    let upstairs = normal_subgroups_within(sq.top().kernel()).unwrap();
    let downstairs = sorted(normal_subgroups_within(sq.bottom().kernel()).unwrap());
    let images = sorted(upstairs.iter().map(|n| sq.left().hom().image_of(n)).collect());
    images.len() == upstairs.len() && images == downstairs
}

/// A subgroup `E` of the corner for which the restricted square is still
/// semi-cartesian must be the whole corner.
fn no_proper_semi_subsquare(sq: &CommSquare) -> bool {
    all_subgroups(sq.corner()).iter().filter(|e| !e.is_whole()).all(|e| !pairs_cover_fiber_product(sq, e))
}

/// Laws of two squares pasted horizontally, and of the transposed vertical pasting.
pub fn pasting(r: &[usize]) -> Vec<&'static str> {
    let mut out = Vec::new();
    let (_, left, right) = random_pasting(r);
    let outer = compose_horizontal(&left, &right).unwrap();
    let carts = [is_cartesian(&left), is_cartesian(&right), is_cartesian(&outer)];
    fail(&mut out, carts.iter().filter(|&&x| x).count() != 2, "two of three cartesian");
    if carts.iter().all(|&x| x) {
        let compact = |s: &CommSquare| is_compact_cartesian_exhaustive(s).unwrap();
        fail(
            &mut out,
            compact(&outer) == (compact(&left) && compact(&right)),
            "compactness of pasted cartesian squares",
        );
    }
    let semis = [is_semi_cartesian(&left), is_semi_cartesian(&right), is_semi_cartesian(&outer)];
    fail(&mut out, !semis[2] || semis[1], "outer semi-cartesian implies right semi-cartesian");
    fail(&mut out, !(semis[0] && semis[1]) || semis[2], "semi-cartesian squares paste");

    let vertical = compose_vertical(&transpose(&left), &transpose(&right)).unwrap();
    let same = transpose(&outer);
    let edges_agree = vertical.top() == same.top()
        && vertical.left() == same.left()
        && vertical.bottom() == same.bottom()
        && vertical.right() == same.right();
    fail(&mut out, edges_agree, "vertical pasting is transposed horizontal pasting");
    out
}

/// The cube on `X/N_c` spanned by three normal subgroups: when all six faces
/// are cartesian, a compact top face forces a compact bottom face.
pub fn cube(r: &[usize]) -> Vec<&'static str> {
    let mut out = Vec::new();
    let lat: &Lattice = &super::zoo()[r[0] % super::zoo().len()];
    let c = r[1] % lat.len();
    let dirs = [lat.pick_above(c, r[2]), lat.pick_above(c, r[3]), lat.pick_above(c, r[4])];
    // Vertex for a subset of directions: the join of N_c with those N_d.
    let vertex = |mask: usize| (0..3).filter(|d| mask >> d & 1 == 1).fold(c, |acc, d| lat.join(acc, dirs[d]));
    // Face spanned by directions (d1, d2) at the vertex `base`.
    let face = |base: usize, d1: usize, d2: usize| {
        lat.square(vertex(base), vertex(base | 1 << d1), vertex(base | 1 << d2), vertex(base | 1 << d1 | 1 << d2))
    };
    // Directions: 0 is η (top to G), 1 is τ (hat to plain), 2 is β (down to B).
    let faces = [face(0, 0, 1), face(1 << 2, 0, 1), face(0, 0, 2), face(1 << 1, 0, 2), face(0, 1, 2), face(1, 1, 2)];
    if faces.iter().all(is_cartesian) {
        let compact = |s: &CommSquare| is_compact_cartesian_exhaustive(s).unwrap();
        fail(&mut out, !compact(&faces[0]) || compact(&faces[1]), "cube: compact top face gives compact bottom face");
    }
    out
}
