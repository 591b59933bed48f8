//! Weyl-group orders, brute-force generation as permutation groups on the
//! roots, and conjugacy-class counts.

use std::collections::{HashMap, VecDeque};

use super::{validate, Family, RootSystem};
use crate::error::{Error, Result};

/// Highest rank of `B`, `C` and `D` for which conjugacy classes are counted.
pub const CLASS_RANK_CAP_BCD: u32 = 6;
/// Highest rank of `A` for which conjugacy classes are counted.
pub const CLASS_RANK_CAP_A: u32 = 7;

fn factorial(n: u32) -> Result<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k)).ok_or_else(|| overflow(n))
}

fn overflow(n: u32) -> Error {
    Error::Overflow(format!("group order at rank {n} exceeds 128 bits"))
}

fn pow2(k: u32) -> Result<u128> {
    1u128.checked_shl(k).filter(|_| k < 128).ok_or_else(|| overflow(k))
}

/// `|W(Φ)|` from the closed formulas for each family.
pub fn weyl_order(family: Family, rank: u32) -> Result<u128> {
    validate(family, rank)?;
    let n = rank;
    let checked = |a: u128, b: u128| a.checked_mul(b).ok_or_else(|| overflow(n));
    match family {
        Family::A => factorial(n + 1),
        Family::B | Family::C => checked(pow2(n)?, factorial(n)?),
        Family::D => checked(pow2(n - 1)?, factorial(n)?),
        Family::G => Ok(12),
        Family::F => Ok(1152),
        Family::E => Ok(match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        }),
    }
}

/// Order of the absolute Weyl group of `PSO(d, 1)`: with `ℓ = ⌊(d+1)/2⌋`,
/// `2^ℓ·ℓ!` for even `d` and `2^{ℓ−1}·ℓ!` for odd `d`.
///
/// `d = 3` is rejected because the group is then not absolutely simple.
pub fn hyperbolic_weyl_order(d: u32) -> Result<u128> {
    if d < 2 {
        return Err(Error::invalid(format!("dimension {d} is below 2")));
    }
    if d == 3 {
        return Err(Error::invalid("dimension 3 is excluded: PSO(3,1) is not absolutely simple"));
    }
    let l = d.div_ceil(2);
    let e = if d.is_multiple_of(2) { l } else { l - 1 };
    pow2(e)?.checked_mul(factorial(l)?).ok_or_else(|| overflow(d))
}

/// A Weyl group realized as permutations of the roots of its system.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    /// Elements in breadth-first generation order; element 0 is the identity.
    pub elements: Vec<Vec<u16>>,
    /// Simple reflections as root permutations.
    pub generators: Vec<Vec<u16>>,
}

fn compose(a: &[u16], b: &[u16]) -> Vec<u16> {
    // (a ∘ b)(i) = a(b(i))
    b.iter().map(|&i| a[i as usize]).collect()
}

/// Generate `W(Φ)` by closing the simple reflections, failing once more
/// than `cap` elements have been produced.
pub fn brute_force_weyl_group(system: &RootSystem, cap: usize) -> Result<WeylGroup> {
    if system.roots.len() > u16::MAX as usize {
        return Err(Error::unsupported("too many roots for permutation encoding"));
    }
    let idx = system.root_index();
    let generators: Vec<Vec<u16>> = system
        .simple_roots()
        .iter()
        .map(|a| {
            system
                .roots
                .iter()
                .map(|r| idx[&RootSystem::reflect(a, r)] as u16)
                .collect()
        })
        .collect();
    let identity: Vec<u16> = (0..system.roots.len() as u16).collect();
    let mut seen: HashMap<Vec<u16>, usize> = HashMap::new();
    seen.insert(identity.clone(), 0);
    let mut elements = vec![identity];
    let mut head = 0;
    while head < elements.len() {
        for g in &generators {
            let h = compose(g, &elements[head]);
            if !seen.contains_key(&h) {
                if elements.len() >= cap {
                    return Err(Error::unsupported(format!(
                        "Weyl group of {}{} exceeds the generation cap of {cap} elements",
                        system.family, system.rank
                    )));
                }
                seen.insert(h.clone(), elements.len());
                elements.push(h);
            }
        }
        head += 1;
    }
    Ok(WeylGroup { elements, generators })
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Number of conjugacy classes, by orbits of conjugation under the
    /// generating reflections (which are involutions).
    pub fn conjugacy_class_count(&self) -> usize {
        let index: HashMap<&[u16], usize> =
            self.elements.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
        let mut class = vec![usize::MAX; self.elements.len()];
        let mut count = 0;
        for start in 0..self.elements.len() {
            if class[start] != usize::MAX {
                continue;
            }
            class[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for s in &self.generators {
                    let c = compose(s, &compose(&self.elements[i], s));
                    let j = index[c.as_slice()];
                    if class[j] == usize::MAX {
                        class[j] = count;
                        queue.push_back(j);
                    }
                }
            }
            count += 1;
        }
        count
    }
}

fn within_class_cap(family: Family, rank: u32) -> bool {
    match family {
        Family::A => rank <= CLASS_RANK_CAP_A,
        Family::B | Family::C | Family::D => rank <= CLASS_RANK_CAP_BCD,
        Family::G | Family::F => true,
        Family::E => rank == 6,
    }
}

/// Number of nontrivial conjugacy classes of `W(Φ)`, by brute force.
pub fn weyl_conjugacy_classes(family: Family, rank: u32) -> Result<usize> {
    validate(family, rank)?;
    if !within_class_cap(family, rank) {
        return Err(Error::unsupported(format!(
            "conjugacy classes of W({family}{rank}) are beyond the brute-force cap"
        )));
    }
    let sys = RootSystem::new(family, rank)?;
    let w = brute_force_weyl_group(&sys, usize::MAX)?;
    Ok(w.conjugacy_class_count() - 1)
}
