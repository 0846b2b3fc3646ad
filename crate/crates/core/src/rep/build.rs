//! Grothendieck ring builders: composition-factor structure constants
//! in characteristic p, and the class-sum formula for rational
//! character tables in characteristic zero.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::group::PermGroup;
use super::matrixrep::MatrixRep;
use super::meataxe::{chop, iso_test, merge_factor};
use super::RepError;
use crate::coeff::is_prime;
use crate::field::PrimeField;
use crate::matrix::Mat;
use crate::ring::{AxiomReport, RingWithBasis};

/// Desk-scale caps for the modular builder.
const MAX_GROUP_ORDER: usize = 48;
const MAX_PRIME: u64 = 13;
const MAX_SIMPLE_DIM: usize = 40;

/// Pairwise non-isomorphic irreducibles with stable indices. `complete`
/// records that the set is closed under chopping tensor products and
/// duals, which is the operational completeness criterion here (every
/// simple already occurs in the regular module).
#[derive(Debug, Clone)]
pub struct SimpleList {
    pub simples: Vec<MatrixRep>,
    pub complete: bool,
}

/// All simples of F_p[G]: chop the regular representation, deduplicate,
/// then close under tensor products and duals. Ordering is trivial
/// module first, then by dimension and character fingerprint.
pub fn find_simples(group: &Arc<PermGroup>, p: u64) -> Result<SimpleList, RepError> {
    let field = PrimeField::new(p);
    let regular = MatrixRep::regular(group.clone(), field);
    let mut simples: Vec<(MatrixRep, usize)> = Vec::new();
    for (rep, count) in chop(&regular)? {
        merge_factor(&mut simples, rep, count)?;
    }
    let mut simples: Vec<MatrixRep> = simples.into_iter().map(|(r, _)| r).collect();

    let mut complete = false;
    for _ in 0..8 {
        let mut new_reps: Vec<MatrixRep> = Vec::new();
        let snapshot = simples.clone();
        for a in &snapshot {
            let dual = a.dual();
            if !contains_iso(&simples, &dual)? && !contains_iso(&new_reps, &dual)? {
                new_reps.push(dual);
            }
            for b in &snapshot {
                for (factor, _) in chop(&a.tensor(b)?)? {
                    if !contains_iso(&simples, &factor)? && !contains_iso(&new_reps, &factor)? {
                        new_reps.push(factor);
                    }
                }
            }
        }
        if new_reps.is_empty() {
            complete = true;
            break;
        }
        simples.extend(new_reps);
    }

    simples.sort_by_key(|r| {
        let is_trivial = r.dim() == 1 && r.character().iter().all(|&v| v == 1 % p);
        (!is_trivial, r.dim(), r.character())
    });
    Ok(SimpleList { simples, complete })
}

fn contains_iso(list: &[MatrixRep], rep: &MatrixRep) -> Result<bool, RepError> {
    for r in list {
        if iso_test(r, rep)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Linear independence of the characters of a set of pairwise
/// non-isomorphic simples, as a rank computation over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterIndependence {
    pub independent: bool,
    /// First pair of inputs with identical characters, if any; a
    /// duplicate violates the pairwise-non-isomorphic precondition and
    /// forces `independent = false`.
    pub duplicate: Option<(usize, usize)>,
}

pub fn character_independence(simples: &[MatrixRep]) -> CharacterIndependence {
    if simples.is_empty() {
        return CharacterIndependence {
            independent: true,
            duplicate: None,
        };
    }
    let field = simples[0].field();
    let rows: Vec<Vec<u64>> = simples.iter().map(|r| r.character()).collect();
    let mut duplicate = None;
    'outer: for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if rows[i] == rows[j] {
                duplicate = Some((i, j));
                break 'outer;
            }
        }
    }
    let mat = Mat::from_rows(field, rows);
    CharacterIndependence {
        independent: mat.rank() == simples.len(),
        duplicate,
    }
}

/// Builds the Grothendieck ring of F_p[G]-modules: basis indexed by the
/// simples, structure constants from composition multiplicities of
/// tensor products, dual permutation from contragredients. The axiom
/// report is returned alongside; adjointness may legitimately fail off
/// the semisimple case.
pub fn build_grothendieck_modular(
    group: &Arc<PermGroup>,
    p: u64,
) -> Result<(RingWithBasis, AxiomReport, SimpleList), RepError> {
    if !is_prime(p) || p > MAX_PRIME {
        return Err(RepError::DeskScale(format!(
            "p = {p} outside the supported primes (<= {MAX_PRIME})"
        )));
    }
    if group.order() > MAX_GROUP_ORDER {
        return Err(RepError::DeskScale(format!(
            "|G| = {} exceeds {MAX_GROUP_ORDER}",
            group.order()
        )));
    }
    let list = find_simples(group, p)?;
    let n = list.simples.len();
    for s in &list.simples {
        if s.dim() > MAX_SIMPLE_DIM {
            return Err(RepError::DeskScale(format!(
                "simple of dimension {} exceeds {MAX_SIMPLE_DIM}",
                s.dim()
            )));
        }
    }

    let mut constants = vec![vec![vec![0i64; n]; n]; n];
    for i in 0..n {
        for j in i..n {
            let product = list.simples[i].tensor(&list.simples[j])?;
            for (factor, count) in chop(&product)? {
                let k = position_of(&list.simples, &factor)?.ok_or_else(|| {
                    RepError::Ring("tensor factor missing from the simple list".into())
                })?;
                constants[i][j][k] = count as i64;
                constants[j][i][k] = count as i64;
            }
        }
    }

    let mut dual = vec![0usize; n];
    for (i, s) in list.simples.iter().enumerate() {
        let d = s.dual();
        dual[i] = position_of(&list.simples, &d)?.ok_or_else(|| {
            RepError::Ring("dual of a simple missing from the simple list".into())
        })?;
    }

    let labels: Vec<String> = list
        .simples
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if i == 0 {
                "1".to_string()
            } else {
                format!("S{}d{}", i, s.dim())
            }
        })
        .collect();
    let label = format!("gr-mod{}-ord{}", p, group.order());
    let ring = RingWithBasis::new(label, 0, dual, constants, Some(labels))
        .map_err(|e| RepError::Ring(e.to_string()))?;
    let report = ring.verify_axioms();
    Ok((ring, report, list))
}

fn position_of(list: &[MatrixRep], rep: &MatrixRep) -> Result<Option<usize>, RepError> {
    for (i, r) in list.iter().enumerate() {
        if iso_test(r, rep)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// A rational (integer-entry) character table. Row orthogonality is
/// verified exactly on construction of the ring.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharTable {
    pub class_sizes: Vec<u64>,
    pub order: u64,
    pub rows: Vec<Vec<i64>>,
}

impl CharTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serialization")
    }

    pub fn from_json(s: &str) -> Result<Self, RepError> {
        serde_json::from_str(s).map_err(|e| RepError::Json(e.to_string()))
    }

    fn validate(&self) -> Result<(), RepError> {
        let c = self.class_sizes.len();
        if self.rows.is_empty() || self.rows.iter().any(|r| r.len() != c) {
            return Err(RepError::BadTable("ragged or empty rows".into()));
        }
        let total: u64 = self.class_sizes.iter().sum();
        if total != self.order {
            return Err(RepError::BadTable(format!(
                "class sizes sum to {total}, group order is {}",
                self.order
            )));
        }
        for i in 0..self.rows.len() {
            for j in 0..self.rows.len() {
                let mut acc: i128 = 0;
                for k in 0..c {
                    acc += self.class_sizes[k] as i128
                        * self.rows[i][k] as i128
                        * self.rows[j][k] as i128;
                }
                let expected = if i == j { self.order as i128 } else { 0 };
                if acc != expected {
                    return Err(RepError::BadTable(format!(
                        "row orthogonality fails at rows {i}, {j}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Character ring in characteristic zero from a rational table:
/// n(i,j,k) = (1/|G|) sum over classes of |c| X_i X_j X_k, which must
/// come out a nonnegative integer. Rational characters are self-dual.
pub fn build_character_ring_char0(table: &CharTable) -> Result<(RingWithBasis, AxiomReport), RepError> {
    table.validate()?;
    let n = table.rows.len();
    let c = table.class_sizes.len();
    let unit = table
        .rows
        .iter()
        .position(|r| r.iter().all(|&v| v == 1))
        .ok_or_else(|| RepError::BadTable("no trivial character row".into()))?;

    let mut constants = vec![vec![vec![0i64; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc: i128 = 0;
                for s in 0..c {
                    acc += table.class_sizes[s] as i128
                        * table.rows[i][s] as i128
                        * table.rows[j][s] as i128
                        * table.rows[k][s] as i128;
                }
                if acc % table.order as i128 != 0 {
                    return Err(RepError::BadTable(format!(
                        "structure constant ({i},{j},{k}) is not an integer"
                    )));
                }
                let v = acc / table.order as i128;
                if v < 0 {
                    return Err(RepError::BadTable(format!(
                        "structure constant ({i},{j},{k}) is negative"
                    )));
                }
                constants[i][j][k] = v as i64;
            }
        }
    }
    let dual: Vec<usize> = (0..n).collect();
    let labels: Vec<String> = (0..n).map(|i| format!("chi{i}")).collect();
    let label = format!("char0-ord{}", table.order);
    let ring = RingWithBasis::new(label, unit, dual, constants, Some(labels))
        .map_err(|e| RepError::Ring(e.to_string()))?;
    let report = ring.verify_axioms();
    Ok((ring, report))
}
