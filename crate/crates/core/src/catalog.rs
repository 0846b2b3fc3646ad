//! Built-in fixture rings: cyclic and symmetric group rings, character
//! rings of S_3 and S_4, the Fibonacci and Ising fusion rings,
//! Tambara-Yamagami over Z/2, Verlinde rings up to level 6, and the
//! rank-2 supervector ring Z[g]/(g^2 - 1).

use crate::rep::{build_character_ring_char0, CharTable, PermGroup};
use crate::ring::{RingError, RingWithBasis};

/// All fixture names, in catalog order.
pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> = (2..=12).map(|n| format!("z{n}")).collect();
    names.extend(["s3", "s4", "char-s3", "char-s4"].map(String::from));
    names.extend(["fibonacci", "ising", "ty-z2"].map(String::from));
    names.extend((1..=6).map(|k| format!("verlinde-{k}")));
    names.push("supervect".to_string());
    names
}

pub fn catalog(name: &str) -> Result<RingWithBasis, RingError> {
    if let Some(n) = name.strip_prefix('z').and_then(|s| s.parse::<usize>().ok()) {
        if (2..=12).contains(&n) {
            return Ok(cyclic_group_ring(n));
        }
    }
    if let Some(k) = name
        .strip_prefix("verlinde-")
        .and_then(|s| s.parse::<usize>().ok())
    {
        if (1..=6).contains(&k) {
            return Ok(verlinde(k));
        }
    }
    match name {
        "s3" => Ok(group_ring("s3", &PermGroup::symmetric(3))),
        "s4" => Ok(group_ring("s4", &PermGroup::symmetric(4))),
        "char-s3" => char_ring("char-s3", &s3_char_table()),
        "char-s4" => char_ring("char-s4", &s4_char_table()),
        "fibonacci" => fibonacci(),
        "ising" => ising("ising", ["1", "sigma", "psi"]),
        "ty-z2" => ising("ty-z2", ["1", "g", "m"]),
        "supervect" => supervect(),
        _ => Err(RingError::UnknownFixture(name.to_string())),
    }
}

/// Group ring of Z/n: basis g^0, .., g^(n-1); the involution sends a
/// group element to its inverse.
pub fn cyclic_group_ring(n: usize) -> RingWithBasis {
    assert!(n >= 1);
    let mut constants = vec![vec![vec![0i64; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            constants[i][j][(i + j) % n] = 1;
        }
    }
    let dual = (0..n).map(|i| (n - i) % n).collect();
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    RingWithBasis::new(format!("z{n}"), 0, dual, constants, Some(labels))
        .expect("cyclic group ring shape")
}

/// Integral group ring on an enumerated permutation group; the dual is
/// inversion.
pub fn group_ring(label: &str, group: &PermGroup) -> RingWithBasis {
    let n = group.order();
    let mut constants = vec![vec![vec![0i64; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            constants[i][j][group.mul(i, j)] = 1;
        }
    }
    let dual = (0..n).map(|i| group.inverse(i)).collect();
    let labels = group
        .elements()
        .iter()
        .map(|p| {
            let images: Vec<String> = p.one_based().iter().map(|v| v.to_string()).collect();
            format!("({})", images.join(","))
        })
        .collect();
    RingWithBasis::new(label, 0, dual, constants, Some(labels))
        .expect("group ring shape")
}

fn char_ring(label: &str, table: &CharTable) -> Result<RingWithBasis, RingError> {
    let (ring, _) = build_character_ring_char0(table)
        .map_err(|e| RingError::Invalid(e.to_string()))?;
    Ok(ring.with_label(label))
}

pub fn s3_char_table() -> CharTable {
    CharTable {
        class_sizes: vec![1, 3, 2],
        order: 6,
        rows: vec![vec![1, 1, 1], vec![1, -1, 1], vec![2, 0, -1]],
    }
}

/// Classes: identity, transpositions (6), double transpositions (3),
/// 3-cycles (8), 4-cycles (6).
pub fn s4_char_table() -> CharTable {
    CharTable {
        class_sizes: vec![1, 6, 3, 8, 6],
        order: 24,
        rows: vec![
            vec![1, 1, 1, 1, 1],
            vec![1, -1, 1, 1, -1],
            vec![2, 0, 2, -1, 0],
            vec![3, 1, -1, 0, -1],
            vec![3, -1, -1, 0, 1],
        ],
    }
}

fn fibonacci() -> Result<RingWithBasis, RingError> {
    // tau^2 = 1 + tau.
    let constants = vec![
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![0, 1], vec![1, 1]],
    ];
    RingWithBasis::new(
        "fibonacci",
        0,
        vec![0, 1],
        constants,
        Some(vec!["1".into(), "tau".into()]),
    )
}

/// Fusion rules sigma^2 = 1 + psi, sigma psi = psi sigma = sigma,
/// psi^2 = 1; Tambara-Yamagami over Z/2 realizes the same table with
/// basis {1, g, m} (g m = m, m^2 = 1 + g).
fn ising(label: &str, labels: [&str; 3]) -> Result<RingWithBasis, RingError> {
    let (one, sigma, psi) = (0usize, 1usize, 2usize);
    let mut constants = vec![vec![vec![0i64; 3]; 3]; 3];
    for i in 0..3 {
        constants[one][i][i] = 1;
        constants[i][one][i] = 1;
    }
    constants[sigma][sigma][one] = 1;
    constants[sigma][sigma][psi] = 1;
    constants[sigma][psi][sigma] = 1;
    constants[psi][sigma][sigma] = 1;
    constants[psi][psi][one] = 1;
    RingWithBasis::new(
        label,
        0,
        vec![0, 1, 2],
        constants,
        Some(labels.map(String::from).to_vec()),
    )
}

/// Truncated Clebsch-Gordan rules at level k: V_i V_j contains V_l once
/// when |i-j| <= l <= min(i+j, 2k-i-j) and l = i+j (mod 2).
pub fn verlinde(k: usize) -> RingWithBasis {
    let n = k + 1;
    let mut constants = vec![vec![vec![0i64; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let lo = i.abs_diff(j);
            let hi = (i + j).min(2 * k - i - j);
            let mut l = lo;
            while l <= hi {
                constants[i][j][l] = 1;
                l += 2;
            }
        }
    }
    let labels = (0..n).map(|i| format!("V{i}")).collect();
    RingWithBasis::new(
        format!("verlinde-{k}"),
        0,
        (0..n).collect(),
        constants,
        Some(labels),
    )
    .expect("verlinde ring shape")
}

fn supervect() -> Result<RingWithBasis, RingError> {
    let constants = vec![
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![0, 1], vec![1, 0]],
    ];
    RingWithBasis::new(
        "supervect",
        0,
        vec![0, 1],
        constants,
        Some(vec!["1".into(), "g".into()]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_at_least_twelve_fixtures() {
        let names = catalog_names();
        assert!(names.len() >= 12, "only {} fixtures", names.len());
        for name in &names {
            let ring = catalog(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(ring.label(), name);
        }
    }

    #[test]
    fn unknown_name_errors() {
        assert!(matches!(
            catalog("nope"),
            Err(RingError::UnknownFixture(_))
        ));
        assert!(catalog("z13").is_err());
        assert!(catalog("verlinde-7").is_err());
    }

    #[test]
    fn supervect_shape() {
        let ring = catalog("supervect").unwrap();
        assert_eq!(ring.rank(), 2);
        assert_eq!(ring.constant(1, 1, 0), 1); // g^2 = 1
        assert_eq!(ring.constant(1, 1, 1), 0);
        assert_eq!(ring.dual(), &[0, 1]); // g self-dual
    }

    #[test]
    fn fibonacci_shape() {
        let ring = catalog("fibonacci").unwrap();
        assert_eq!(ring.rank(), 2);
        assert_eq!(ring.constant(1, 1, 0), 1);
        assert_eq!(ring.constant(1, 1, 1), 1);
    }

    #[test]
    fn verlinde_2_fusion() {
        let ring = catalog("verlinde-2").unwrap();
        assert_eq!(ring.rank(), 3);
        // V1 * V1 = V0 + V2.
        assert_eq!(ring.constant(1, 1, 0), 1);
        assert_eq!(ring.constant(1, 1, 1), 0);
        assert_eq!(ring.constant(1, 1, 2), 1);
    }

    #[test]
    fn every_fixture_passes_all_axioms() {
        for name in catalog_names() {
            let ring = catalog(&name).unwrap();
            let report = ring.verify_axioms();
            assert!(report.all_pass(), "{name} fails axioms: {report:?}");
        }
    }

    #[test]
    fn group_ring_duals_are_inverses() {
        let ring = catalog("s3").unwrap();
        let g = PermGroup::symmetric(3);
        for i in 0..6 {
            assert_eq!(ring.dual()[i], g.inverse(i));
        }
    }

    #[test]
    fn ty_z2_matches_ising_table() {
        let a = catalog("ising").unwrap();
        let b = catalog("ty-z2").unwrap();
        assert_eq!(a.constants_3d(), b.constants_3d());
        assert_ne!(a.label(), b.label());
    }
}
