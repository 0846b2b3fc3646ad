//! Matrix representations of a finite group over a prime field, with
//! tensor/sum/dual constructors and exact character functions.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::group::{Perm, PermGroup};
use super::RepError;
use crate::field::{Field, PrimeField};
use crate::matrix::Mat;

/// A representation given by one invertible matrix per group generator.
/// Vectors are columns and matrices act on the left, so the assignment
/// extends along the group's breadth-first enumeration via
/// M(a * g) = M(a) M(g).
#[derive(Debug, Clone)]
pub struct MatrixRep {
    group: Arc<PermGroup>,
    field: PrimeField,
    dim: usize,
    gens: Vec<Mat<PrimeField>>,
    elements: OnceLock<Vec<Mat<PrimeField>>>,
}

impl MatrixRep {
    /// Validates shapes, invertibility, and that the assignment is a
    /// homomorphism (checked on every (element, generator) pair of the
    /// enumeration, which suffices by induction on word length).
    pub fn new(
        group: Arc<PermGroup>,
        field: PrimeField,
        gens: Vec<Mat<PrimeField>>,
    ) -> Result<Self, RepError> {
        if gens.len() != group.generators().len() {
            return Err(RepError::InvalidRep(format!(
                "expected {} generator matrices, got {}",
                group.generators().len(),
                gens.len()
            )));
        }
        let dim = gens.first().map_or(0, |m| m.rows());
        if dim == 0 && !gens.is_empty() {
            return Err(RepError::InvalidRep("zero-dimensional generator".into()));
        }
        for m in &gens {
            if m.rows() != dim || m.cols() != dim {
                return Err(RepError::InvalidRep("generator shape mismatch".into()));
            }
            if m.inverse().is_none() {
                return Err(RepError::InvalidRep("singular generator matrix".into()));
            }
        }
        let dim = if gens.is_empty() { dim } else { dim };
        let rep = MatrixRep {
            group,
            field,
            dim,
            gens,
            elements: OnceLock::new(),
        };
        rep.check_homomorphism()?;
        Ok(rep)
    }

    /// A representation with no generator matrices is only meaningful
    /// for the trivial group; `dim` must then be given explicitly.
    pub fn with_dim(
        group: Arc<PermGroup>,
        field: PrimeField,
        dim: usize,
        gens: Vec<Mat<PrimeField>>,
    ) -> Result<Self, RepError> {
        if gens.is_empty() {
            return Ok(MatrixRep {
                group,
                field,
                dim,
                gens,
                elements: OnceLock::new(),
            });
        }
        let rep = MatrixRep::new(group, field, gens)?;
        if rep.dim != dim {
            return Err(RepError::InvalidRep("dimension mismatch".into()));
        }
        Ok(rep)
    }

    fn check_homomorphism(&self) -> Result<(), RepError> {
        let mats = self.element_matrices();
        for a in 0..self.group.order() {
            for (gi, _) in self.gens.iter().enumerate() {
                let prod_idx = {
                    let g = &self.group.generators()[gi];
                    let w = self.group.elements()[a].compose(g);
                    self.group.index_of(&w).expect("closed enumeration")
                };
                if mats[a].mul(&self.gens[gi]) != mats[prod_idx] {
                    return Err(RepError::InvalidRep(format!(
                        "matrices violate the relation at element {a}, generator {gi}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }
    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn gens(&self) -> &[Mat<PrimeField>] {
        &self.gens
    }

    pub fn same_context(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
            && self.field == other.field
    }

    pub(crate) fn require_same_context(&self, other: &Self) -> Result<(), RepError> {
        if self.field != other.field {
            return Err(RepError::FieldMismatch);
        }
        if !(Arc::ptr_eq(&self.group, &other.group) || self.group == other.group) {
            return Err(RepError::GroupMismatch);
        }
        Ok(())
    }

    /// One matrix per enumerated group element, built along the BFS
    /// words and cached.
    pub fn element_matrices(&self) -> &Vec<Mat<PrimeField>> {
        self.elements.get_or_init(|| {
            let n = self.group.order();
            let mut mats = Vec::with_capacity(n);
            mats.push(Mat::identity(self.field, self.dim));
            for k in 1..n {
                let (pred, gi) = self.group.word(k).expect("non-identity element");
                mats.push(mats[pred].mul(&self.gens[gi]));
            }
            mats
        })
    }

    /// The trivial one-dimensional representation.
    pub fn trivial(group: Arc<PermGroup>, field: PrimeField) -> Self {
        let gens = group
            .generators()
            .iter()
            .map(|_| Mat::identity(field, 1))
            .collect();
        MatrixRep {
            dim: 1,
            group,
            field,
            gens,
            elements: OnceLock::new(),
        }
    }

    /// The regular representation: left multiplication on the group
    /// element basis.
    pub fn regular(group: Arc<PermGroup>, field: PrimeField) -> Self {
        let n = group.order();
        let gens = group
            .generators()
            .iter()
            .map(|g| {
                let mut m = Mat::zeros(field, n, n);
                for h in 0..n {
                    // Column h maps to g * h.
                    let gh = group
                        .index_of(&g.compose(&group.elements()[h]))
                        .expect("closed");
                    *m.at_mut(gh, h) = field.one();
                }
                m
            })
            .collect();
        MatrixRep {
            dim: n,
            group,
            field,
            gens,
            elements: OnceLock::new(),
        }
    }

    /// The natural permutation representation on the points the group
    /// acts on.
    pub fn natural(group: Arc<PermGroup>, field: PrimeField) -> Self {
        let d = group.degree();
        let gens = group
            .generators()
            .iter()
            .map(|g| perm_matrix(field, g))
            .collect();
        MatrixRep {
            dim: d,
            group,
            field,
            gens,
            elements: OnceLock::new(),
        }
    }

    pub fn tensor(&self, other: &Self) -> Result<Self, RepError> {
        self.require_same_context(other)?;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| a.kronecker(b))
            .collect();
        Ok(MatrixRep {
            group: self.group.clone(),
            field: self.field,
            dim: self.dim * other.dim,
            gens,
            elements: OnceLock::new(),
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, RepError> {
        self.require_same_context(other)?;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Ok(MatrixRep {
            group: self.group.clone(),
            field: self.field,
            dim: self.dim + other.dim,
            gens,
            elements: OnceLock::new(),
        })
    }

    /// Contragredient representation: inverse transpose on generators.
    pub fn dual(&self) -> Self {
        let gens = self
            .gens
            .iter()
            .map(|m| m.inverse().expect("generators invertible").transpose())
            .collect();
        MatrixRep {
            group: self.group.clone(),
            field: self.field,
            dim: self.dim,
            gens,
            elements: OnceLock::new(),
        }
    }

    /// Trace of every enumerated group element. Panics if the values
    /// fail to be constant on conjugacy classes, which would mean the
    /// input is not a representation.
    pub fn character(&self) -> Vec<u64> {
        let values: Vec<u64> = self
            .element_matrices()
            .iter()
            .map(|m| m.trace())
            .collect();
        for class in self.group.classes() {
            let v = values[class[0]];
            assert!(
                class.iter().all(|&e| values[e] == v),
                "character not constant on a conjugacy class"
            );
        }
        values
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RepJson::from(self)).expect("rep serialization")
    }

    pub fn from_json(s: &str) -> Result<(Self, Arc<PermGroup>), RepError> {
        let parsed: RepJson = serde_json::from_str(s).map_err(|e| RepError::Json(e.to_string()))?;
        parsed.build()
    }
}

pub(crate) fn perm_matrix(field: PrimeField, g: &Perm) -> Mat<PrimeField> {
    let d = g.degree();
    let mut m = Mat::zeros(field, d, d);
    for i in 0..d {
        *m.at_mut(g.apply(i), i) = field.one();
    }
    m
}

/// On-disk form of a permutation group: 1-based generator images.
#[derive(Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub perm_generators: Vec<Vec<usize>>,
}

impl GroupJson {
    pub fn build(&self) -> Result<PermGroup, RepError> {
        let gens = self
            .perm_generators
            .iter()
            .map(|g| {
                if g.len() != self.degree {
                    return Err(RepError::BadPermutation);
                }
                Perm::from_one_based(g)
            })
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(self.degree, gens)
    }

    pub fn of(group: &PermGroup) -> Self {
        GroupJson {
            degree: group.degree(),
            perm_generators: group.generators().iter().map(|g| g.one_based()).collect(),
        }
    }
}

/// On-disk form of a matrix representation; fields alphabetical so the
/// JSON keys come out sorted.
#[derive(Serialize, Deserialize)]
pub struct RepJson {
    pub dim: usize,
    pub generators: Vec<Vec<Vec<u64>>>,
    pub group: GroupJson,
    pub p: u64,
}

impl RepJson {
    pub fn build(&self) -> Result<(MatrixRep, Arc<PermGroup>), RepError> {
        let group = Arc::new(self.group.build()?);
        let field = PrimeField::new(self.p);
        let gens = self
            .generators
            .iter()
            .map(|rows| {
                Mat::from_rows(
                    field,
                    rows.iter()
                        .map(|r| r.iter().map(|&v| v % self.p).collect())
                        .collect(),
                )
            })
            .collect();
        let rep = MatrixRep::with_dim(group.clone(), field, self.dim, gens)?;
        if rep.dim() != self.dim {
            return Err(RepError::InvalidRep("declared dimension mismatch".into()));
        }
        Ok((rep, group))
    }
}

impl From<&MatrixRep> for RepJson {
    fn from(rep: &MatrixRep) -> Self {
        RepJson {
            dim: rep.dim(),
            generators: rep
                .gens()
                .iter()
                .map(|m| {
                    (0..m.rows())
                        .map(|i| m.row(i).to_vec())
                        .collect()
                })
                .collect(),
            group: GroupJson::of(rep.group()),
            p: rep.field().p(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_natural(p: u64) -> (Arc<PermGroup>, MatrixRep) {
        let g = Arc::new(PermGroup::symmetric(3));
        let rep = MatrixRep::natural(g.clone(), PrimeField::new(p));
        (g, rep)
    }

    #[test]
    fn regular_rep_is_a_homomorphism() {
        let g = Arc::new(PermGroup::symmetric(3));
        let rep = MatrixRep::regular(g, PrimeField::new(2));
        let mats = rep.element_matrices();
        assert_eq!(mats.len(), 6);
        assert!(mats[0].is_identity());
        // Re-validate through the public constructor.
        let rebuilt = MatrixRep::new(rep.group().clone(), rep.field(), rep.gens().to_vec());
        assert!(rebuilt.is_ok());
    }

    #[test]
    fn invalid_assignment_rejected() {
        let g = Arc::new(PermGroup::symmetric(3));
        let f = PrimeField::new(5);
        // Send both generators to the same order-2 matrix; the braid
        // relation of S_3 fails.
        let swap = Mat::from_i64(f, &[&[0, 1], &[1, 0]]);
        let err = MatrixRep::new(g, f, vec![swap.clone(), swap]);
        assert!(matches!(err, Err(RepError::InvalidRep(_))));
    }

    #[test]
    fn tensor_dual_sum_dimensions() {
        let (_, rep) = s3_natural(2);
        let t = rep.tensor(&rep).unwrap();
        assert_eq!(t.dim(), 9);
        let s = rep.direct_sum(&rep).unwrap();
        assert_eq!(s.dim(), 6);
        let d = rep.dual().dual();
        // Double dual is the original on the nose for permutation matrices.
        assert_eq!(d.gens()[0], rep.gens()[0]);
    }

    #[test]
    fn trivial_tensor_anything_keeps_character() {
        let g = Arc::new(PermGroup::symmetric(3));
        let f = PrimeField::new(5);
        let triv = MatrixRep::trivial(g.clone(), f);
        let nat = MatrixRep::natural(g, f);
        let prod = triv.tensor(&nat).unwrap();
        assert_eq!(prod.character(), nat.character());
    }

    #[test]
    fn character_additive_on_sums_and_multiplicative_on_tensors() {
        let (_, rep) = s3_natural(7);
        let f = PrimeField::new(7);
        let sum = rep.direct_sum(&rep).unwrap();
        let prod = rep.tensor(&rep).unwrap();
        let chi: Vec<u64> = rep.character();
        let chi_sum: Vec<u64> = sum.character();
        let chi_prod: Vec<u64> = prod.character();
        for i in 0..chi.len() {
            assert_eq!(chi_sum[i], f.add(&chi[i], &chi[i]));
            assert_eq!(chi_prod[i], f.mul(&chi[i], &chi[i]));
        }
    }

    #[test]
    fn json_round_trip() {
        let (_, rep) = s3_natural(3);
        let json = rep.to_json();
        let (back, _) = MatrixRep::from_json(&json).unwrap();
        assert_eq!(back.dim(), rep.dim());
        assert_eq!(back.gens(), rep.gens());
        assert_eq!(back.to_json(), json);
    }
}
