//! JSON file formats for groups, complexes, extensions, profiles and deficits.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};

use crate::complex::{ActionEntries, Cell, CwComplex, GCWComplex};
use crate::cover::{CoverModel, ExtensionData};
use crate::error::{Error, Result};
use crate::euler::{DeficitVector, EulerProfile};
use crate::group::{FiniteGroup, Subgroup, DEFAULT_ORDER_CAP};
use crate::Rational;

/// Version tag carried by every report.
pub const SCHEMA_VERSION: &str = "1.0";

/// Rationals as `"p/q"`, or `"p"` when integral.
pub fn ser_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(q))
}

pub fn rational_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Approximate value, for display.
pub fn rational_f64(q: &Rational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Table { mul: Vec<Vec<usize>> },
    Perm { degree: usize, generators: Vec<Vec<usize>> },
    /// Catalog name such as `S4` or `S3xC3`.
    Named { name: String },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        self.build_capped(DEFAULT_ORDER_CAP)
    }

    /// Fails with `OrderCapExceeded` for groups larger than `cap`.
    pub fn build_capped(&self, cap: usize) -> Result<FiniteGroup> {
        let g = match self {
            GroupSpec::Table { mul } => {
                if mul.len() > cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                FiniteGroup::from_multiplication_table(mul)?
            }
            GroupSpec::Perm { degree, generators } => {
                FiniteGroup::from_permutation_generators_capped(*degree, generators, cap)?
            }
            GroupSpec::Named { name } => crate::catalog::group_by_name(name)?,
        };
        if g.order() > cap {
            return Err(Error::OrderCapExceeded { cap });
        }
        Ok(g)
    }

    pub fn table_of(group: &FiniteGroup) -> Self {
        GroupSpec::Table { mul: group.table() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellSpec {
    pub id: u64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub cells: Vec<CellSpec>,
    #[serde(default)]
    pub boundary: BTreeMap<u64, Vec<(u64, i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub action: BTreeMap<usize, ActionEntries>,
    /// Kernel `π` of a cover, as element indices of the group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free_kernel: Option<Vec<usize>>,
}

impl ComplexSpec {
    pub fn complex(&self) -> Result<CwComplex> {
        let cells = self.cells.iter().map(|c| Cell { id: c.id, dim: c.dim }).collect();
        CwComplex::new(cells, self.boundary.iter().map(|(&k, v)| (k, v.clone())).collect())
    }

    /// The G-complex; trivial group when none is given.
    pub fn gcw(&self) -> Result<GCWComplex> {
        let x = self.complex()?;
        let y = match &self.group {
            None if self.action.is_empty() => GCWComplex::with_trivial_group(x),
            None => return Err(Error::InvalidInput("action given without a group".into())),
            Some(g) => GCWComplex::new(x, g.build()?, &self.action)?,
        };
        let report = y.validate();
        if !report.is_valid() {
            return Err(Error::InvalidComplex(format!("{:?}", report.violations)));
        }
        Ok(y)
    }

    pub fn of(y: &GCWComplex) -> Self {
        let x = y.complex();
        let cells = x.cells().iter().map(|c| CellSpec { id: c.id, dim: c.dim }).collect();
        let boundary = (0..x.len())
            .filter(|&i| !x.boundary(i).is_empty())
            .map(|i| (x.id(i), x.boundary(i).iter().map(|&(f, k)| (x.id(f), k)).collect()))
            .collect();
        let action: BTreeMap<usize, ActionEntries> = y
            .group()
            .elements()
            .skip(1)
            .map(|g| {
                let moved = (0..x.len())
                    .filter_map(|c| {
                        let (d, s) = y.act(g, c);
                        (d != c || s != 1).then(|| (x.id(c), x.id(d), s))
                    })
                    .collect();
                (g, moved)
            })
            .collect();
        let group = (y.group().order() > 1).then(|| GroupSpec::table_of(y.group()));
        ComplexSpec { cells, boundary, group, action, free_kernel: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OntoSpec {
    pub g: GroupSpec,
    pub map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    pub gamma: GroupSpec,
    pub pi: Vec<usize>,
    /// Without it `G` is `Γ/π` with cosets numbered by smallest element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub onto_g: Option<OntoSpec>,
}

impl ExtensionSpec {
    pub fn build(&self) -> Result<ExtensionData> {
        let gamma = self.gamma.build()?;
        match &self.onto_g {
            Some(o) => ExtensionData::new(gamma, &self.pi, o.g.build()?, o.map.clone()),
            None => ExtensionData::from_quotient(gamma, &self.pi),
        }
    }
}

/// Builds the cover model from a cover file and an optional extension file.
/// Without an extension the cover's `free_kernel` is used with `G = Γ/π`;
/// without either the model is the complex itself with `π = 1`.
pub fn cover_model(cover: &ComplexSpec, extension: Option<&ExtensionSpec>) -> Result<CoverModel> {
    let x = cover.gcw()?;
    let e = match (extension, &cover.free_kernel) {
        (Some(e), _) => {
            let e = e.build()?;
            if let Some(k) = &cover.free_kernel {
                if Subgroup::from_elements(e.total(), k)? != *e.kernel() {
                    return Err(Error::InvalidCover("free_kernel differs from the extension's π".into()));
                }
            }
            e
        }
        (None, Some(k)) => ExtensionData::from_quotient(x.group().clone(), k)?,
        (None, None) => ExtensionData::trivial(x.group().clone()),
    };
    CoverModel::new(x, e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSpec {
    pub complex: ComplexSpec,
    /// Closed-cell values by cell id.
    pub values: BTreeMap<u64, i64>,
}

impl ProfileSpec {
    pub fn build(&self) -> Result<EulerProfile> {
        let x = self.complex.complex()?;
        let mut values = vec![0; x.len()];
        for (&id, &v) in &self.values {
            let i = x.index_of(id).ok_or_else(|| Error::InvalidInput(format!("unknown cell {id}")))?;
            values[i] = v;
        }
        if self.values.len() != x.len() {
            return Err(Error::InvalidInput("profile must give a value for every cell".into()));
        }
        EulerProfile::new(x, values)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DeficitSpec {
    Bare(Vec<i64>),
    Labeled {
        #[serde(default)]
        components: Option<Vec<u64>>,
        entries: Vec<i64>,
    },
}

impl DeficitSpec {
    pub fn build(&self) -> Result<DeficitVector> {
        match self {
            DeficitSpec::Bare(v) | DeficitSpec::Labeled { components: None, entries: v } => {
                Ok(DeficitVector::unlabeled(v.clone()))
            }
            DeficitSpec::Labeled { components: Some(c), entries } => DeficitVector::new(c.clone(), entries.clone()),
        }
    }
}

/// Subgroup given as a list of element indices.
pub fn subgroup(group: &FiniteGroup, elements: &[usize]) -> Result<Subgroup> {
    Subgroup::from_elements(group, elements)
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn group_formats() {
        let t: GroupSpec = parse(r#"{"kind":"table","mul":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(t.build().unwrap().order(), 2);
        let p: GroupSpec = parse(r#"{"kind":"perm","degree":3,"generators":[[1,0,2],[1,2,0]]}"#).unwrap();
        assert_eq!(p.build().unwrap().order(), 6);
        assert!(parse::<GroupSpec>(r#"{"kind":"table","mul":[[0]],"x":1}"#).is_err());
        assert!(parse::<GroupSpec>(r#"{"kind":"table","mul":[[0,1],[0,1]]}"#).unwrap().build().is_err());
    }

    #[test]
    fn complex_round_trip() {
        for y in [catalog::conjugation_circle(), catalog::free_gamma_circles(), catalog::square_cover().cover().clone()] {
            let spec = ComplexSpec::of(&y);
            let text = serde_json::to_string(&spec).unwrap();
            let back: ComplexSpec = parse(&text).unwrap();
            let z = back.gcw().unwrap();
            assert_eq!(z.complex(), y.complex());
            assert_eq!(z.action_table(), y.action_table());
        }
    }

    #[test]
    fn cover_from_spec() {
        let m = catalog::square_cover();
        let mut spec = ComplexSpec::of(m.cover());
        spec.free_kernel = Some(vec![0, 1]);
        let n = cover_model(&spec, None).unwrap();
        assert_eq!(n.base().complex().len(), 4);
        let e = ExtensionSpec {
            gamma: GroupSpec::table_of(m.extension().total()),
            pi: vec![0, 1],
            onto_g: Some(OntoSpec { g: GroupSpec::Table { mul: vec![vec![0, 1], vec![1, 0]] }, map: vec![0, 0, 1, 1] }),
        };
        assert!(cover_model(&spec, Some(&e)).is_ok());
        spec.free_kernel = Some(vec![0, 2]);
        assert!(cover_model(&spec, Some(&e)).is_err());
    }

    #[test]
    fn deficits_and_rationals() {
        assert_eq!(parse::<DeficitSpec>("[1,-1]").unwrap().build().unwrap().entries, vec![1, -1]);
        let d: DeficitSpec = parse(r#"{"components":[0,1],"entries":[0,0]}"#).unwrap();
        assert_eq!(d.build().unwrap().components, vec![0, 1]);
        assert_eq!(rational_string(&Rational::new(1.into(), 2.into())), "1/2");
        assert_eq!(rational_string(&Rational::from_integer((-3).into())), "-3");
    }

    #[test]
    fn profile_requires_every_cell() {
        let spec = ComplexSpec::of(&GCWComplex::with_trivial_group(catalog::circle()));
        let p = ProfileSpec { complex: spec.clone(), values: BTreeMap::from([(0, 1), (1, 1), (2, 1), (3, 1)]) };
        assert_eq!(p.build().unwrap().total(), 0);
        let q = ProfileSpec { complex: spec, values: BTreeMap::from([(0, 1)]) };
        assert!(q.build().is_err());
    }
}
