//! Commutative squares of covers and their cartesian, semi-cartesian and
//! compactness predicates.
//!
//! ```text
//!   H --top--> G
//!   |          |
//!  left      right
//!   v          v
//!   B -bottom-> A
//! ```

use alloc::sync::Arc;

use crate::hom::same_group;
use crate::lattice::{all_subgroups, is_indecomposable};
use crate::search::{table_is_surjective, HomSearch};
use crate::{Cover, Error, FiniteGroup, GroupHom, Result, Subgroup};

#[derive(Clone, Debug)]
pub struct CommSquare {
    top: Cover,
    left: Cover,
    bottom: Cover,
    right: Cover,
}

/// Checks that the four covers form a commutative square.
pub fn make_square(top: Cover, left: Cover, bottom: Cover, right: Cover) -> Result<CommSquare> {
    if !same_group(top.source(), left.source()) {
        return Err(Error::SourceTargetMismatch("top and left must share a source"));
    }
    if !same_group(top.target(), right.source()) {
        return Err(Error::SourceTargetMismatch("top must end where right starts"));
    }
    if !same_group(left.target(), bottom.source()) {
        return Err(Error::SourceTargetMismatch("left must end where bottom starts"));
    }
    if !same_group(bottom.target(), right.target()) {
        return Err(Error::SourceTargetMismatch("bottom and right must share a target"));
    }
    let commutes = top.source().elements().all(|h| bottom.apply(left.apply(h)) == right.apply(top.apply(h)));
    if !commutes {
        return Err(Error::NotCommutative);
    }
    Ok(CommSquare { top, left, bottom, right })
}

impl CommSquare {
    /// The square with identity top and bottom and `edge` on both sides.
    pub fn identity_along(edge: &Cover) -> CommSquare {
        CommSquare {
            top: Cover::identity(edge.source()),
            left: edge.clone(),
            bottom: Cover::identity(edge.target()),
            right: edge.clone(),
        }
    }

    pub fn top(&self) -> &Cover {
        &self.top
    }
    pub fn left(&self) -> &Cover {
        &self.left
    }
    pub fn bottom(&self) -> &Cover {
        &self.bottom
    }
    pub fn right(&self) -> &Cover {
        &self.right
    }

    pub fn corner(&self) -> &Arc<FiniteGroup> {
        self.top.source()
    }

    /// Kernel of the diagonal `H ↠ A`.
    pub fn diagonal_kernel(&self) -> Subgroup {
        let h = self.corner();
        let members = crate::BitSet::from_indices(
            h.order(),
            h.elements().filter(|&x| self.bottom.apply(self.left.apply(x)) == 0).map(|x| x as usize),
        );
        Subgroup::from_members(h.clone(), members)
    }

    /// Size of `left(Ker top)`.
    fn left_image_of_top_kernel(&self) -> usize {
        let k2 = self.top.kernel();
        k2.order() / k2.intersect(self.left.kernel()).order()
    }
}

/// The left map restricts to a bijection `Ker top → Ker bottom`.
pub fn is_cartesian(sq: &CommSquare) -> bool {
    sq.top.kernel().intersect(sq.left.kernel()).is_trivial() && sq.top.kernel().order() == sq.bottom.kernel().order()
}

/// The left map carries `Ker top` onto `Ker bottom`.
pub fn is_semi_cartesian(sq: &CommSquare) -> bool {
    sq.left_image_of_top_kernel() == sq.bottom.kernel().order()
}

/// Cartesian via the kernel decomposition `K = K_1 × K_2` of the diagonal
/// kernel into the left and top kernels.
pub fn is_cartesian_by_kernels(sq: &CommSquare) -> bool {
    let (k1, k2) = (sq.left.kernel(), sq.top.kernel());
    k1.intersect(k2).is_trivial() && k1.order() * k2.order() == sq.diagonal_kernel().order()
}

/// Cartesian via bijectivity of `h ↦ (left(h), top(h))` onto the fiber product.
pub fn is_cartesian_by_pairs(sq: &CommSquare) -> bool {
    pair_count(sq) == sq.corner().order() && pair_count(sq) == fiber_pair_count(sq)
}

/// The semi-cartesian criteria read from kernels and lifts:
/// `[Ker(φη) = Ker β · Ker η, η(Ker β) = Ker φ, every compatible pair lifts]`.
pub fn semi_cartesian_criteria(sq: &CommSquare) -> [bool; 3] {
    let (k1, k2) = (sq.left.kernel(), sq.top.kernel());
    let product = k1.order() * k2.order() / k1.intersect(k2).order();
    let a = product == sq.diagonal_kernel().order();
    let c = k1.order() / k1.intersect(k2).order() == sq.right.kernel().order();
    let f = pair_count(sq) == fiber_pair_count(sq);
    [a, c, f]
}

fn pair_count(sq: &CommSquare) -> usize {
    let b = sq.left.target().order();
    let mut seen = crate::BitSet::new(b * sq.top.target().order());
    for h in sq.corner().elements() {
        seen.insert(sq.top.apply(h) as usize * b + sq.left.apply(h) as usize);
    }
    seen.count()
}

fn fiber_pair_count(sq: &CommSquare) -> usize {
    sq.bottom.target().order() * sq.bottom.kernel().order() * sq.right.kernel().order()
}

/// No proper subgroup of the corner maps onto both `B` and `G`.
pub fn is_compact_cartesian(sq: &CommSquare) -> Result<bool> {
    if !is_cartesian(sq) {
        return Err(Error::NotCartesian);
    }
    if let Some(answer) = compact_by_indecomposable_bottom(sq) {
        return Ok(answer);
    }
    Ok(compact_exhaustive(sq))
}

/// Exhaustive search over the subgroup lattice of the corner.
pub fn is_compact_cartesian_exhaustive(sq: &CommSquare) -> Result<bool> {
    if !is_cartesian(sq) {
        return Err(Error::NotCartesian);
    }
    Ok(compact_exhaustive(sq))
}

fn compact_exhaustive(sq: &CommSquare) -> bool {
    if sq.bottom.is_isomorphism() {
        return true;
    }
    let (nb, ng) = (sq.left.target().order(), sq.top.target().order());
    !all_subgroups(sq.corner())
        .iter()
        .any(|e| !e.is_whole() && sq.left.hom().image_of(e).order() == nb && sq.top.hom().image_of(e).order() == ng)
}

/// For a cartesian square with indecomposable bottom: compact iff no
/// `γ: G ↠ B` satisfies `bottom ∘ γ = right`. `None` if the bottom is decomposable.
pub fn compact_by_indecomposable_bottom(sq: &CommSquare) -> Option<bool> {
    if !is_indecomposable(&sq.bottom) {
        return None;
    }
    Some(find_section_through_bottom(sq).is_none())
}

/// A surjection `γ: G ↠ B` with `bottom ∘ γ = right`.
pub fn find_section_through_bottom(sq: &CommSquare) -> Option<GroupHom> {
    let (g, b) = (sq.top.target(), sq.left.target());
    HomSearch::over(g, b, |x| sq.right.apply(x), |y| sq.bottom.apply(y)).find(|t| table_is_surjective(t, b.order()))
}

/// A surjection `γ: G ↠ B` with `γ ∘ top = left`; exists iff `Ker top ≤ Ker left`.
pub fn find_factorization_through_top(sq: &CommSquare) -> Option<GroupHom> {
    if !sq.top.kernel().is_subgroup_of(sq.left.kernel()) {
        return None;
    }
    let (g, b) = (sq.top.target(), sq.left.target());
    let mut image = alloc::vec![0u32; g.order()];
    for h in sq.corner().elements() {
        image[sq.top.apply(h) as usize] = sq.left.apply(h);
    }
    Some(GroupHom::new_unchecked(g.clone(), b.clone(), image))
}

/// Pastes `left_sq` and `right_sq` along their shared vertical edge.
pub fn compose_horizontal(left_sq: &CommSquare, right_sq: &CommSquare) -> Result<CommSquare> {
    if left_sq.right != right_sq.left {
        return Err(Error::Mismatch("the shared vertical edges differ"));
    }
    Ok(CommSquare {
        top: left_sq.top.then(&right_sq.top)?,
        left: left_sq.left.clone(),
        bottom: left_sq.bottom.then(&right_sq.bottom)?,
        right: right_sq.right.clone(),
    })
}

/// Pastes `upper` above `lower` along their shared horizontal edge.
pub fn compose_vertical(upper: &CommSquare, lower: &CommSquare) -> Result<CommSquare> {
    if upper.bottom != lower.top {
        return Err(Error::Mismatch("the shared horizontal edges differ"));
    }
    Ok(CommSquare {
        top: upper.top.clone(),
        left: upper.left.then(&lower.left)?,
        bottom: lower.bottom.clone(),
        right: upper.right.then(&lower.right)?,
    })
}

/// The square with top and left exchanged, and bottom and right exchanged.
pub fn transpose(sq: &CommSquare) -> CommSquare {
    CommSquare { top: sq.left.clone(), left: sq.top.clone(), bottom: sq.right.clone(), right: sq.bottom.clone() }
}
