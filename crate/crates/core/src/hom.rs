//! Homomorphisms, covers and quotients.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{BitSet, Error, FiniteGroup, Result, Subgroup};

/// A homomorphism given by its full image table.
#[derive(Clone)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    image: Vec<u32>,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupHom")
            .field("source_order", &self.source.order())
            .field("target_order", &self.target.order())
            .field("image", &self.image)
            .finish()
    }
}

/// Equality of element tables; sources and targets are compared by table.
impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image && self.source == other.source && self.target == other.target
    }
}
impl Eq for GroupHom {}

impl GroupHom {
    /// Validates the full image table.
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, image: Vec<u32>) -> Result<Self> {
        if image.len() != source.order() || image.iter().any(|&y| y as usize >= target.order()) {
            return Err(Error::NotHomomorphism);
        }
        let h = GroupHom { source, target, image };
        let s = &h.source;
        for a in s.elements() {
            for b in s.elements() {
                if h.apply(s.mul(a, b)) != h.target.mul(h.apply(a), h.apply(b)) {
                    return Err(Error::NotHomomorphism);
                }
            }
        }
        Ok(h)
    }

    pub(crate) fn new_unchecked(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, image: Vec<u32>) -> Self {
        GroupHom { source, target, image }
    }

    /// Extends images of the source's generators, failing if no homomorphism does.
    pub fn from_generator_images(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: &[u32]) -> Result<Self> {
        let gens = source.generators().to_vec();
        if images.len() != gens.len() || images.iter().any(|&y| y as usize >= target.order()) {
            return Err(Error::NotHomomorphism);
        }
        let image = extend_on_generators(&source, &target, &gens, images).ok_or(Error::NotHomomorphism)?;
        Ok(GroupHom { source, target, image })
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), image: g.elements().collect() }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn table(&self) -> &[u32] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.image[x as usize]
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &GroupHom) -> Result<GroupHom> {
        if !same_group(&self.target, &then.source) {
            return Err(Error::SourceTargetMismatch("composition"));
        }
        let image = self.image.iter().map(|&y| then.apply(y)).collect();
        Ok(GroupHom { source: self.source.clone(), target: then.target.clone(), image })
    }

    pub fn kernel(&self) -> Subgroup {
        let members = BitSet::from_indices(
            self.source.order(),
            self.image.iter().enumerate().filter(|(_, &y)| y == 0).map(|(x, _)| x),
        );
        Subgroup::from_members(self.source.clone(), members)
    }

    pub fn image_set(&self) -> BitSet {
        BitSet::from_indices(self.target.order(), self.image.iter().map(|&y| y as usize))
    }

    pub fn is_surjective(&self) -> bool {
        self.image_set().count() == self.target.order()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    pub fn image_of(&self, sub: &Subgroup) -> Subgroup {
        let members = BitSet::from_indices(self.target.order(), sub.elements().iter().map(|&x| self.apply(x) as usize));
        Subgroup::from_members(self.target.clone(), members)
    }

    pub fn preimage_of(&self, sub: &Subgroup) -> Subgroup {
        let members = BitSet::from_indices(
            self.source.order(),
            (0..self.source.order()).filter(|&x| sub.contains(self.image[x])),
        );
        Subgroup::from_members(self.source.clone(), members)
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_bijective() {
            return Err(Error::NotIsomorphism);
        }
        let mut image = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            image[y as usize] = x as u32;
        }
        Ok(GroupHom { source: self.target.clone(), target: self.source.clone(), image })
    }
}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Extends generator images along the Cayley graph; `None` on inconsistency.
pub(crate) fn extend_on_generators(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[u32],
    images: &[u32],
) -> Option<Vec<u32>> {
    const UNSET: u32 = u32::MAX;
    let mut map = vec![UNSET; source.order()];
    map[0] = 0;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &t) in gens.iter().zip(images) {
            let y = source.mul(x, g);
            let ty = target.mul(map[x as usize], t);
            match map[y as usize] {
                UNSET => {
                    map[y as usize] = ty;
                    queue.push(y);
                }
                v if v != ty => return None,
                _ => {}
            }
        }
    }
    if queue.len() != source.order() {
        return None;
    }
    Some(map)
}

/// A surjective homomorphism `H ↠ G` together with its kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    hom: GroupHom,
    kernel: Subgroup,
}

impl Cover {
    pub fn new(hom: GroupHom) -> Result<Self> {
        if !hom.is_surjective() {
            return Err(Error::NotSurjective);
        }
        Ok(Self::from_surjection(hom))
    }

    pub(crate) fn from_surjection(hom: GroupHom) -> Self {
        let kernel = hom.kernel();
        Cover { hom, kernel }
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> Self {
        Self::from_surjection(GroupHom::identity(g))
    }

    /// The cover `G ↠ 1`.
    pub fn to_trivial(g: &Arc<FiniteGroup>) -> Self {
        let one = Arc::new(FiniteGroup::trivial());
        Self::from_surjection(GroupHom::new_unchecked(g.clone(), one, vec![0; g.order()]))
    }

    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        self.hom.source()
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        self.hom.target()
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.hom.apply(x)
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &Cover) -> Result<Cover> {
        Ok(Self::from_surjection(self.hom.then(&then.hom)?))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.kernel.is_trivial()
    }

    /// Fiber over a target element, sorted.
    pub fn fiber(&self, g: u32) -> Vec<u32> {
        self.source().elements().filter(|&h| self.apply(h) == g).collect()
    }
}

/// The quotient `H/N` with cosets labeled in order of their least element.
pub fn quotient(h: &Arc<FiniteGroup>, n: &Subgroup) -> Result<(Arc<FiniteGroup>, Cover)> {
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let order = h.order();
    const UNSET: u32 = u32::MAX;
    let mut label = vec![UNSET; order];
    let mut reps = Vec::new();
    for x in h.elements() {
        if label[x as usize] == UNSET {
            let c = reps.len() as u32;
            reps.push(x);
            for &k in n.elements() {
                label[h.mul(x, k) as usize] = c;
            }
        }
    }
    let q = reps.len();
    let mut mul = vec![0u32; q * q];
    for (a, &ra) in reps.iter().enumerate() {
        for (b, &rb) in reps.iter().enumerate() {
            mul[a * q + b] = label[h.mul(ra, rb) as usize];
        }
    }
    let gens: Vec<u32> = h.generators().iter().map(|&g| label[g as usize]).collect();
    let labels: Vec<String> = h.generator_labels().to_vec();
    let group = Arc::new(FiniteGroup::from_table_unchecked(q, mul).with_generators(gens, labels));
    let hom = GroupHom::new_unchecked(h.clone(), group.clone(), label);
    let cover = Cover { hom, kernel: n.clone() };
    Ok((group, cover))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_group;

    #[test]
    fn quotients_have_expected_orders_and_kernels() {
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let c2 = Subgroup::generated(&c4, &[2]);
        let (q, pi) = quotient(&c4, &c2).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(pi.kernel(), &c2);
        assert!(pi.hom().is_surjective());
        assert!(GroupHom::new(c4.clone(), q.clone(), pi.hom().table().to_vec()).is_ok());

        let (q1, iso) = quotient(&c4, &Subgroup::trivial(&c4)).unwrap();
        assert_eq!(q1.order(), 4);
        assert!(iso.is_isomorphism());

        let s3 = Arc::new(build_group(&[vec![1, 0, 2], vec![1, 2, 0]], &[], 100).unwrap());
        let a3 = Subgroup::generated(&s3, &[2]);
        assert_eq!(a3.order(), 3);
        let (q, pi) = quotient(&s3, &a3).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(pi.kernel(), &a3);
        let t = Subgroup::generated(&s3, &[1]);
        assert_eq!(quotient(&s3, &t).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn generator_extension() {
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let eta = GroupHom::from_generator_images(c4.clone(), c2.clone(), &[1]).unwrap();
        assert_eq!(eta.table(), &[0, 1, 0, 1]);
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        assert!(GroupHom::from_generator_images(c3, c2, &[1]).is_err());
        assert!(eta.then(&GroupHom::identity(&c4)).is_err());
    }
}
