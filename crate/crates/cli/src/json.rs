//! Serialized forms of groups, homs, subgroups and module data. Groups are
//! multiplication tables; `from_*` and `build` are mutually inverse.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use fundament_core::module::{EndoField, GModule};
use fundament_core::{FiniteGroup, GroupHom, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupData {
    pub order: usize,
    pub generators: Vec<u32>,
    pub labels: Vec<String>,
    /// Row `a` lists the products `a·b`.
    pub table: Vec<Vec<u32>>,
}

impl GroupData {
    pub fn from_group(g: &FiniteGroup) -> Self {
        let n = g.order();
        GroupData {
            order: n,
            generators: g.generators().to_vec(),
            labels: g.generator_labels().to_vec(),
            table: g.table().chunks(n).map(<[u32]>::to_vec).collect(),
        }
    }

    pub fn build(&self) -> fundament_core::Result<FiniteGroup> {
        let mul = self.table.concat();
        FiniteGroup::from_table_with_generators(self.order, mul, self.generators.clone(), self.labels.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomData {
    pub source: GroupData,
    pub target: GroupData,
    /// Image of each source element.
    pub image: Vec<u32>,
}

impl HomData {
    pub fn from_hom(h: &GroupHom) -> Self {
        HomData {
            source: GroupData::from_group(h.source()),
            target: GroupData::from_group(h.target()),
            image: h.table().to_vec(),
        }
    }

    pub fn build(&self) -> fundament_core::Result<GroupHom> {
        let source = Arc::new(self.source.build()?);
        let target = Arc::new(self.target.build()?);
        GroupHom::new(source, target, self.image.clone())
    }
}

/// A subgroup of a group given elsewhere in the document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupData {
    pub order: usize,
    pub elements: Vec<u32>,
}

impl SubgroupData {
    pub fn from_subgroup(s: &Subgroup) -> Self {
        SubgroupData { order: s.order(), elements: s.elements().to_vec() }
    }

    pub fn build(&self, parent: &Arc<FiniteGroup>) -> fundament_core::Result<Subgroup> {
        Subgroup::from_elements(parent, &self.elements)
    }
}

/// A module over `F_p` by the matrices of the group's generators, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleData {
    pub characteristic: u32,
    pub dim: usize,
    pub generator_matrices: Vec<Vec<Vec<u32>>>,
}

impl ModuleData {
    pub fn from_module(m: &GModule) -> Self {
        let matrices = m
            .group()
            .generators()
            .iter()
            .map(|&g| {
                let a = m.action(g);
                (0..a.rows()).map(|i| a.row(i).to_vec()).collect()
            })
            .collect();
        ModuleData { characteristic: m.characteristic(), dim: m.dim(), generator_matrices: matrices }
    }
}

/// `F_q` with the labels used for coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldData {
    pub order: usize,
    pub characteristic: u32,
    pub elements: Vec<String>,
}

impl FieldData {
    pub fn from_field(f: &EndoField) -> Self {
        FieldData {
            order: f.order(),
            characteristic: f.characteristic(),
            elements: (0..f.order()).map(|x| f.label(x)).collect(),
        }
    }
}

/// Coordinate rows over `F_q`, each entry a field label.
pub fn labeled_rows(f: &EndoField, rows: &[Vec<usize>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|&x| f.label(x)).collect()).collect()
}
