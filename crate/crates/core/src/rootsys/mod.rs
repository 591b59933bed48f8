//! Root systems of the Killing–Cartan families in explicit coordinates,
//! Weyl-group bookkeeping, root values of torus elements and the geodesic
//! length functional `λ(γ) = (Σ_α (log|α(γ)|)²)^{1/2}`.
//!
//! # Coordinates
//!
//! Roots are stored as integer vectors together with a `scale`; the actual
//! root is `v / scale`.
//!
//! * `A_n`: `e_i − e_j` in `ℝ^{n+1}`.
//! * `B_n`: `±e_i`, `±e_i ± e_j` in `ℝ^n`.
//! * `C_n`: `±2e_i`, `±e_i ± e_j` in `ℝ^n`.
//! * `D_n`: `±e_i ± e_j` in `ℝ^n`.
//! * `G_2`: the vectors of `ℝ^3` with coordinate sum zero of the forms
//!   `e_i − e_j` and `±(2e_i − e_j − e_k)`.
//! * `F_4` (scale 2): `±e_i`, `±e_i ± e_j`, `½(±1, ±1, ±1, ±1)`.
//! * `E_8` (scale 2): `±e_i ± e_j` and `½(±1, …, ±1)` with an even number of
//!   minus signs. `E_7` is the subsystem orthogonal to `e_7 + e_8`, and `E_6`
//!   the one orthogonal to both `e_7 + e_8` and `e_6 − e_7`.
//!
//! Simple roots follow the Bourbaki numbering.

mod length;
mod weyl;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use length::{
    bn_cn_pair_lengths, length_from_log_coordinates, length_lambda, log_length_squared, root_log_values,
    sqrt_closed_form, torus_root_values, BcPair, LengthValue, RootValues, TorusElement,
};
pub use weyl::{
    brute_force_weyl_group, hyperbolic_weyl_order, weyl_conjugacy_classes, weyl_order, WeylGroup,
    CLASS_RANK_CAP_A, CLASS_RANK_CAP_BCD,
};

/// Killing–Cartan family letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(Error::invalid(format!("unknown root-system family '{s}'"))),
        }
    }
}

/// Largest rank accepted for the classical families.
pub const MAX_CLASSICAL_RANK: u32 = 64;

/// Check that `(family, rank)` names an irreducible reduced root system.
pub fn validate(family: Family, rank: u32) -> Result<()> {
    let ok = match family {
        Family::A => rank >= 1,
        Family::B | Family::C => rank >= 2,
        Family::D => rank >= 3,
        Family::E => (6..=8).contains(&rank),
        Family::F => rank == 4,
        Family::G => rank == 2,
    };
    if !ok {
        return Err(Error::invalid(format!("{family}{rank} is not a valid root system")));
    }
    if rank > MAX_CLASSICAL_RANK {
        return Err(Error::unsupported(format!("rank {rank} exceeds the supported maximum {MAX_CLASSICAL_RANK}")));
    }
    Ok(())
}

/// A reduced root system in the coordinates described in the module docs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystem {
    pub family: Family,
    pub rank: u32,
    pub roots: Vec<Vec<i64>>,
    /// Roots are `v / scale` for the stored integer vectors `v`.
    #[serde(default = "one")]
    pub scale: i64,
}

fn one() -> i64 {
    1
}

fn unit(dim: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = c;
    v
}

fn pair(dim: usize, i: usize, si: i64, j: usize, sj: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = si;
    v[j] = sj;
    v
}

fn pm_pairs(n: usize, scale: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::with_capacity(2 * n * (n - 1));
    for i in 0..n {
        for j in i + 1..n {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                out.push(pair(n, i, si * scale, j, sj * scale));
            }
        }
    }
    out
}

fn sign_vectors(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (0u32..1 << n).map(move |mask| (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
}

fn e8_roots() -> Vec<Vec<i64>> {
    let mut roots = pm_pairs(8, 2);
    roots.extend(sign_vectors(8).filter(|v| v.iter().filter(|&&x| x < 0).count() % 2 == 0));
    roots
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootSystem {
    /// Build the root system of type `family`/`rank`.
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        validate(family, rank)?;
        let n = rank as usize;
        let (roots, scale) = match family {
            Family::A => {
                let dim = n + 1;
                let mut r = Vec::with_capacity(n * (n + 1));
                for i in 0..dim {
                    for j in 0..dim {
                        if i != j {
                            r.push(pair(dim, i, 1, j, -1));
                        }
                    }
                }
                (r, 1)
            }
            Family::B | Family::C => {
                let short = if family == Family::B { 1 } else { 2 };
                let mut r = pm_pairs(n, 1);
                for i in 0..n {
                    r.push(unit(n, i, short));
                    r.push(unit(n, i, -short));
                }
                (r, 1)
            }
            Family::D => (pm_pairs(n, 1), 1),
            Family::G => {
                let mut r = Vec::with_capacity(12);
                for i in 0..3 {
                    for j in 0..3 {
                        if i != j {
                            r.push(pair(3, i, 1, j, -1));
                        }
                    }
                    let mut long = vec![-1; 3];
                    long[i] = 2;
                    r.push(long.clone());
                    r.push(long.iter().map(|x| -x).collect());
                }
                (r, 1)
            }
            Family::F => {
                let mut r = pm_pairs(4, 2);
                for i in 0..4 {
                    r.push(unit(4, i, 2));
                    r.push(unit(4, i, -2));
                }
                r.extend(sign_vectors(4));
                (r, 2)
            }
            Family::E => {
                let all = e8_roots();
                let r = match rank {
                    8 => all,
                    7 => all.into_iter().filter(|v| v[6] + v[7] == 0).collect(),
                    _ => all.into_iter().filter(|v| v[6] + v[7] == 0 && v[5] == v[6]).collect(),
                };
                (r, 2)
            }
        };
        Ok(RootSystem { family, rank, roots, scale })
    }

    /// Dimension of the ambient coordinate space.
    pub fn ambient_dim(&self) -> usize {
        self.roots.first().map_or(0, Vec::len)
    }

    /// Expected number of roots for the family.
    pub fn expected_count(family: Family, rank: u32) -> usize {
        let n = rank as usize;
        match family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::G => 12,
            Family::F => 48,
            Family::E => match rank {
                6 => 72,
                7 => 126,
                _ => 240,
            },
        }
    }

    /// Simple roots in Bourbaki order, in the same integer coordinates.
    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank as usize;
        let dim = self.ambient_dim();
        let chain = |len: usize, scale: i64| -> Vec<Vec<i64>> {
            (0..len).map(|i| pair(dim, i, scale, i + 1, -scale)).collect()
        };
        match self.family {
            Family::A => chain(n, 1),
            Family::B => {
                let mut s = chain(n - 1, 1);
                s.push(unit(n, n - 1, 1));
                s
            }
            Family::C => {
                let mut s = chain(n - 1, 1);
                s.push(unit(n, n - 1, 2));
                s
            }
            Family::D => {
                let mut s = chain(n - 1, 1);
                s.push(pair(n, n - 2, 1, n - 1, 1));
                s
            }
            Family::G => vec![vec![1, -1, 0], vec![-2, 1, 1]],
            Family::F => vec![vec![0, 2, -2, 0], vec![0, 0, 2, -2], vec![0, 0, 0, 2], vec![1, -1, -1, -1]],
            Family::E => {
                let mut s = vec![vec![1, -1, -1, -1, -1, -1, -1, 1], pair(8, 0, 2, 1, 2)];
                for i in 0..n - 2 {
                    s.push(pair(8, i, -2, i + 1, 2));
                }
                s
            }
        }
    }

    /// Cartan integers `A_ij = 2⟨α_i, α_j⟩ / ⟨α_j, α_j⟩`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let s = self.simple_roots();
        s.iter().map(|a| s.iter().map(|b| 2 * dot(a, b) / dot(b, b)).collect()).collect()
    }

    /// Reflection of `v` in the hyperplane orthogonal to `alpha`.
    pub fn reflect(alpha: &[i64], v: &[i64]) -> Vec<i64> {
        let c = 2 * dot(v, alpha) / dot(alpha, alpha);
        v.iter().zip(alpha).map(|(x, a)| x - c * a).collect()
    }

    /// Position of each root in `roots`.
    pub fn root_index(&self) -> HashMap<Vec<i64>, usize> {
        self.roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect()
    }

    /// Check negation closure, cardinality and reducedness.
    pub fn check_invariants(&self) -> Result<()> {
        let idx = self.root_index();
        if idx.len() != self.roots.len() {
            return Err(Error::invalid("duplicate roots"));
        }
        if self.roots.len() != Self::expected_count(self.family, self.rank) {
            return Err(Error::invalid(format!(
                "{}{} has {} roots, expected {}",
                self.family,
                self.rank,
                self.roots.len(),
                Self::expected_count(self.family, self.rank)
            )));
        }
        for r in &self.roots {
            let neg: Vec<i64> = r.iter().map(|x| -x).collect();
            if !idx.contains_key(&neg) {
                return Err(Error::invalid("root system is not closed under negation"));
            }
            for k in [2, 3] {
                let multiple: Vec<i64> = r.iter().map(|x| x * k).collect();
                if idx.contains_key(&multiple) {
                    return Err(Error::invalid("root system is not reduced"));
                }
            }
        }
        Ok(())
    }
}

/// Build the root system of type `family`/`rank`.
pub fn build_root_system(family: Family, rank: u32) -> Result<RootSystem> {
    RootSystem::new(family, rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Closure of the simple roots under the simple reflections.
    fn closure(sys: &RootSystem) -> HashSet<Vec<i64>> {
        let simple = sys.simple_roots();
        let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
        let mut stack: Vec<Vec<i64>> = simple.clone();
        while let Some(v) = stack.pop() {
            for a in &simple {
                let w = RootSystem::reflect(a, &v);
                if seen.insert(w.clone()) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    fn all_systems() -> Vec<(Family, u32)> {
        let mut v = Vec::new();
        for n in 1..=7 {
            v.push((Family::A, n));
        }
        for n in 2..=7 {
            v.push((Family::B, n));
            v.push((Family::C, n));
        }
        for n in 3..=7 {
            v.push((Family::D, n));
        }
        v.extend([(Family::G, 2), (Family::F, 4), (Family::E, 6), (Family::E, 7), (Family::E, 8)]);
        v
    }

    #[test]
    fn explicit_roots_match_closure_of_simple_roots() {
        for (f, n) in all_systems() {
            let sys = RootSystem::new(f, n).unwrap();
            sys.check_invariants().unwrap();
            let explicit: HashSet<Vec<i64>> = sys.roots.iter().cloned().collect();
            assert_eq!(closure(&sys), explicit, "{f}{n}");
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(RootSystem::new(Family::A, 1).unwrap().roots.len(), 2);
        assert_eq!(RootSystem::new(Family::B, 3).unwrap().roots.len(), 18);
        assert_eq!(RootSystem::new(Family::G, 2).unwrap().roots.len(), 12);
    }

    #[test]
    fn invalid_pairs_rejected() {
        for (f, n) in [(Family::B, 1), (Family::C, 1), (Family::D, 2), (Family::E, 5), (Family::E, 9), (Family::F, 3), (Family::G, 3), (Family::A, 0)] {
            assert!(matches!(RootSystem::new(f, n), Err(Error::InvalidInput(_))), "{f}{n}");
        }
    }

    #[test]
    fn cartan_matrices() {
        let g2 = RootSystem::new(Family::G, 2).unwrap().cartan_matrix();
        assert_eq!(g2, vec![vec![2, -1], vec![-3, 2]]);
        let b2 = RootSystem::new(Family::B, 2).unwrap().cartan_matrix();
        assert_eq!(b2, vec![vec![2, -2], vec![-1, 2]]);
        let f4 = RootSystem::new(Family::F, 4).unwrap().cartan_matrix();
        assert_eq!(f4[1][2], -2);
        assert_eq!(f4[2][1], -1);
        let e8 = RootSystem::new(Family::E, 8).unwrap().cartan_matrix();
        // α4 is the branch node
        assert_eq!(e8[3].iter().filter(|&&x| x == -1).count(), 3);
        assert_eq!(e8[1][3], -1);
    }

    #[test]
    fn json_round_trip() {
        let sys = RootSystem::new(Family::C, 3).unwrap();
        let s = serde_json::to_string(&sys).unwrap();
        let back: RootSystem = serde_json::from_str(&s).unwrap();
        assert_eq!(back, sys);
        let bare: RootSystem = serde_json::from_str(r#"{"family":"A","rank":1,"roots":[[1,-1],[-1,1]]}"#).unwrap();
        assert_eq!(bare, RootSystem::new(Family::A, 1).unwrap());
    }

    #[test]
    fn family_parsing() {
        assert_eq!("b".parse::<Family>().unwrap(), Family::B);
        assert!("X".parse::<Family>().is_err());
    }
}
