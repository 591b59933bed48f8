//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use lenspec::rootsys::RootSystem;

/// All `x ∈ [−h, h]^4` with `x0² − a x1² − b x2² + ab x3² = 1`, sorted.
pub fn naive_norm_one(a: i64, b: i64, h: i64) -> Vec<[i64; 4]> {
    let (a, b) = (a as i128, b as i128);
    let mut out = Vec::new();
    for x0 in -h..=h {
        for x1 in -h..=h {
            for x2 in -h..=h {
                for x3 in -h..=h {
                    let sq = |v: i64| (v as i128) * (v as i128);
                    if sq(x0) - a * sq(x1) - b * sq(x2) + a * b * sq(x3) == 1 {
                        out.push([x0, x1, x2, x3]);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn squarefree(n: i64) -> i64 {
    let mut m = n.abs();
    let mut s = n.signum();
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            s *= p;
        }
        p += 1;
    }
    s * m
}

/// Depth-first search for `u, v` mod `p^k` with `f(u, v) ≡ 0 (mod p^k)`,
/// lifting one base-`p` digit of each coordinate per level.
fn lift(f: &dyn Fn(i128, i128) -> i128, p: i128, k: u32, level: u32, u: i128, v: i128) -> bool {
    if level == k {
        return true;
    }
    let step = p.pow(level);
    let modulus = step * p;
    for du in 0..p {
        for dv in 0..p {
            let (nu, nv) = (u + du * step, v + dv * step);
            if f(nu, nv).rem_euclid(modulus) == 0 && lift(f, p, k, level + 1, nu, nv) {
                return true;
            }
        }
    }
    false
}

/// Brute solvability oracle for the Hilbert symbol: `(a, b)_p = 1` iff
/// `a x² + b y² = z²` has a primitive solution modulo `p³` (odd `p`) or
/// `2⁵`, after reducing `a`, `b` to squarefree representatives. A
/// primitive vector is scaled so that one coordinate equals one.
pub fn hilbert_oracle(a: i64, b: i64, p: i64) -> i32 {
    let (a, b) = (squarefree(a) as i128, squarefree(b) as i128);
    let k = if p == 2 { 5 } else { 3 };
    let p = p as i128;
    let with_z: &dyn Fn(i128, i128) -> i128 = &|x, y| a * x * x + b * y * y - 1;
    let with_y: &dyn Fn(i128, i128) -> i128 = &|x, z| a * x * x + b - z * z;
    let with_x: &dyn Fn(i128, i128) -> i128 = &|y, z| a + b * y * y - z * z;
    if [with_z, with_y, with_x].iter().any(|f| lift(*f, p, k, 0, 0, 0)) {
        1
    } else {
        -1
    }
}

/// A Weyl group generated independently as permutations of the root list.
pub struct PermGroup {
    pub elements: Vec<Vec<usize>>,
    pub generators: Vec<Vec<usize>>,
}

pub fn perm_weyl_group(sys: &RootSystem) -> PermGroup {
    let index: HashMap<&Vec<i64>, usize> = sys.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let generators: Vec<Vec<usize>> = sys
        .simple_roots()
        .iter()
        .map(|s| sys.roots.iter().map(|r| index[&RootSystem::reflect(s, r)]).collect())
        .collect();
    let id: Vec<usize> = (0..sys.roots.len()).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut elements = Vec::new();
    while let Some(g) = queue.pop_front() {
        for s in &generators {
            let h: Vec<usize> = g.iter().map(|&i| s[i]).collect();
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
        elements.push(g);
    }
    PermGroup { elements, generators }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

fn inverse(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j] = i;
    }
    out
}

impl PermGroup {
    /// Class count by conjugating each representative with every element.
    pub fn class_count(&self) -> usize {
        let mut assigned: HashSet<Vec<usize>> = HashSet::new();
        let inverses: Vec<Vec<usize>> = self.elements.iter().map(|g| inverse(g)).collect();
        let mut classes = 0;
        for x in &self.elements {
            if assigned.contains(x) {
                continue;
            }
            classes += 1;
            for (g, gi) in self.elements.iter().zip(&inverses) {
                assigned.insert(compose(&compose(g, x), gi));
            }
        }
        classes
    }
}

/// Row Hermite normal form over `i128`, nonzero rows only.
pub fn test_hnf(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        for i in r + 1..a.len() {
            // extended Euclid on (a[r][c], a[i][c]) as a unimodular row operation
            while a[i][c] != 0 {
                let q = a[r][c].div_euclid(a[i][c]);
                for j in 0..cols {
                    a[r][j] -= q * a[i][j];
                }
                a.swap(r, i);
            }
        }
        if a[r][c] == 0 {
            continue;
        }
        if a[r][c] < 0 {
            a[r].iter_mut().for_each(|x| *x = -*x);
        }
        for i in 0..r {
            let q = a[i][c].div_euclid(a[r][c]);
            for j in 0..cols {
                a[i][j] -= q * a[r][j];
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Solve `x · basis = v` for a square upper-triangular basis over ℚ and
/// report whether the solution is integral.
pub fn integral_solve(basis: &[Vec<i128>], v: &[i128]) -> bool {
    use num_rational::Ratio;
    let n = basis.len();
    let mut rest: Vec<Ratio<i128>> = v.iter().map(|&x| Ratio::from_integer(x)).collect();
    let mut x = Vec::with_capacity(n);
    for (k, row) in basis.iter().enumerate() {
        let xi = rest[k] / Ratio::from_integer(row[k]);
        for (e, &b) in rest.iter_mut().zip(row) {
            *e -= xi * Ratio::from_integer(b);
        }
        x.push(xi);
    }
    rest.iter().all(|e| *e == Ratio::from_integer(0)) && x.iter().all(|q| q.is_integer())
}
