//! Shared fixtures: small groups with their normal-subgroup lattices, squares
//! assembled from quotient maps, and the covers of `C2` and `C3` used throughout.

#![allow(dead_code)]

pub mod laws;

use std::sync::{Arc, OnceLock};

use fundament_core::fundament::induced_cover;
use fundament_core::lattice::normal_subgroups;
use fundament_core::named;
use fundament_core::squares::{make_square, CommSquare};
use fundament_core::{quotient, Cover, FiniteGroup, GroupHom, Subgroup};

/// A group with its normal subgroups and the quotient map onto each `X/N`.
pub struct Lattice {
    pub group: Arc<FiniteGroup>,
    pub normals: Vec<Subgroup>,
    quotients: Vec<Cover>,
}

impl Lattice {
    pub fn new(g: FiniteGroup) -> Self {
        let group = Arc::new(g);
        let normals = normal_subgroups(&group);
        let quotients = normals.iter().map(|n| quotient(&group, n).unwrap().1).collect();
        Lattice { group, normals, quotients }
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    /// `X ↠ X/N_i`.
    pub fn quotient(&self, i: usize) -> &Cover {
        &self.quotients[i]
    }

    pub fn position(&self, n: &Subgroup) -> usize {
        self.normals.iter().position(|m| m == n).expect("normal subgroups are listed")
    }

    /// `X/N_i ↠ X/N_j` for `N_i ≤ N_j`.
    pub fn map(&self, i: usize, j: usize) -> Cover {
        induced_cover(&self.quotients[i], &self.quotients[j]).unwrap()
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.position(&self.normals[i].join(&self.normals[j]))
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.position(&self.normals[i].intersect(&self.normals[j]))
    }

    /// Indices of the normal subgroups containing `N_i`.
    pub fn above(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.normals[i].is_subgroup_of(&self.normals[j])).collect()
    }

    /// A normal subgroup containing `N_i`, chosen by `r`.
    pub fn pick_above(&self, i: usize, r: usize) -> usize {
        let up = self.above(i);
        up[r % up.len()]
    }

    /// The square of quotient maps with corner `X/N_c`, top `X/N_t`, left
    /// `X/N_l` and bottom-right `X/N_a`; needs `N_c ≤ N_t ∩ N_l` and `N_t N_l ≤ N_a`.
    pub fn square(&self, c: usize, t: usize, l: usize, a: usize) -> CommSquare {
        make_square(self.map(c, t), self.map(c, l), self.map(l, a), self.map(t, a)).unwrap()
    }
}

fn groups() -> Vec<FiniteGroup> {
    let c = FiniteGroup::cyclic;
    vec![
        c(2),
        c(4),
        c(6),
        c(8),
        c(9),
        c(12),
        named::elementary_abelian(2, 2),
        named::elementary_abelian(2, 3),
        named::abelian(&[2, 4]),
        named::abelian(&[3, 3]),
        named::abelian(&[2, 6]),
        named::symmetric(3),
        named::dihedral(4),
        named::quaternion(),
        named::dihedral(5),
        named::alternating(4),
        named::dihedral(6),
        named::direct_product(&named::symmetric(3), &c(3)),
        named::direct_product(&named::quaternion(), &c(2)),
        named::direct_product(&named::dihedral(4), &c(2)),
        named::symmetric(4),
        named::direct_product(&named::alternating(4), &c(2)),
        named::dihedral(12),
        named::direct_product(&named::quaternion(), &c(3)),
    ]
}

/// Groups of order at most 24 with their lattices, built once per test binary.
pub fn zoo() -> &'static [Lattice] {
    static ZOO: OnceLock<Vec<Lattice>> = OnceLock::new();
    ZOO.get_or_init(|| groups().into_iter().map(Lattice::new).collect())
}

/// Lattice indices `(c, t, l, a)` of a random square, with `r` supplying the
/// choices. A third of the draws are forced cartesian and another third have
/// `N_a = N_t N_l`, so that every law gets exercised.
pub fn random_square_indices(r: &[usize]) -> (&'static Lattice, [usize; 4]) {
    let lat = &zoo()[r[0] % zoo().len()];
    let c = r[1] % lat.len();
    let t = lat.pick_above(c, r[2]);
    let l = lat.pick_above(c, r[3]);
    let idx = match r[5] % 3 {
        0 => [c, t, l, lat.pick_above(lat.join(t, l), r[4])],
        1 => [c, t, l, lat.join(t, l)],
        _ => [lat.meet(t, l), t, l, lat.join(t, l)],
    };
    (lat, idx)
}

pub fn random_square(r: &[usize]) -> (&'static Lattice, CommSquare) {
    let (lat, [c, t, l, a]) = random_square_indices(r);
    (lat, lat.square(c, t, l, a))
}

/// Two squares sharing a vertical edge, for horizontal pasting:
/// `X/N_c → X/N_t1 → X/N_t2` over `X/N_l → X/N_m → X/N_a`.
pub fn random_pasting(r: &[usize]) -> (&'static Lattice, CommSquare, CommSquare) {
    let lat = &zoo()[r[0] % zoo().len()];
    let c = r[1] % lat.len();
    let t1 = lat.pick_above(c, r[2]);
    let l = lat.pick_above(c, r[3]);
    let (c, m) = match r[7] % 2 {
        0 => (c, lat.pick_above(lat.join(t1, l), r[4])),
        _ => (lat.meet(t1, l), lat.join(t1, l)),
    };
    let t2 = lat.pick_above(t1, r[5]);
    let a = match r[7] % 4 {
        3 => lat.join(t2, m),
        _ => lat.pick_above(lat.join(t2, m), r[6]),
    };
    (lat, lat.square(c, t1, l, m), lat.square(t1, t2, m, a))
}

/// `(C2, η0: C2×C2 ↠ C2, η1: C4 ↠ C2)`.
pub fn intro() -> (Arc<FiniteGroup>, Cover, Cover) {
    let c4 = Arc::new(FiniteGroup::cyclic(4));
    let (c2, eta1) = quotient(&c4, &Subgroup::generated(&c4, &[2])).unwrap();
    let v4 = Arc::new(named::elementary_abelian(2, 2));
    let eta0 = Cover::new(GroupHom::from_generator_images(v4, c2.clone(), &[1, 0]).unwrap()).unwrap();
    (c2, eta0, eta1)
}

/// `(C3, C3×C3 ↠ C3, C9 ↠ C3)`.
pub fn c3_covers() -> (Arc<FiniteGroup>, Cover, Cover) {
    let c9 = Arc::new(FiniteGroup::cyclic(9));
    let (c3, nonsplit) = quotient(&c9, &Subgroup::generated(&c9, &[3])).unwrap();
    let square = Arc::new(named::abelian(&[3, 3]));
    let split = Cover::new(GroupHom::from_generator_images(square, c3.clone(), &[1, 0]).unwrap()).unwrap();
    (c3, split, nonsplit)
}

/// `S3 ↠ C2` with kernel `A3`, over the given copy of `C2`.
pub fn sign_cover(c2: &Arc<FiniteGroup>) -> Cover {
    let s3 = Arc::new(named::symmetric(3));
    let a3 = normal_subgroups(&s3).into_iter().find(|n| n.order() == 3).unwrap();
    let (q, rho) = quotient(&s3, &a3).unwrap();
    let to_c2 = fundament_core::search::find_isomorphism(&q, c2).unwrap();
    Cover::new(rho.hom().then(&to_c2).unwrap()).unwrap()
}

/// All sequences of length `1..=max_len` over `0..n`.
pub fn words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..n).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}
