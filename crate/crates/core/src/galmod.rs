//! Character lattices as integer lattices `ℤ^dim` with a finite group of
//! automorphisms acting on column vectors.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat;
use crate::linalg::{self, QMatrix};
use crate::poly::{self, Irreducibility};
use crate::rootsys::{Family, RootSystem};

/// Maximum number of group elements produced while closing the generators.
pub const CLOSURE_CAP: usize = 10_000;

/// Seed of the random orbit-span trials in [`GaloisModule::is_q_irreducible`].
pub const IRREDUCIBILITY_SEED: u64 = 0x5eed_0001;
const RANDOM_TRIALS: usize = 32;

pub type IMatrix = Vec<Vec<i64>>;

#[derive(Serialize, Deserialize)]
struct RawModule {
    dim: usize,
    generators: Vec<IMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// A lattice `ℤ^dim` with the finite group generated by `generators`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawModule", into = "RawModule")]
pub struct GaloisModule {
    dim: usize,
    generators: Vec<IMatrix>,
    label: Option<String>,
    elements: Vec<IMatrix>,
}

impl PartialEq for GaloisModule {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.generators == other.generators && self.label == other.label
    }
}

impl TryFrom<RawModule> for GaloisModule {
    type Error = Error;
    fn try_from(r: RawModule) -> Result<Self> {
        GaloisModule::new(r.dim, r.generators, r.label)
    }
}

impl From<GaloisModule> for RawModule {
    fn from(m: GaloisModule) -> Self {
        RawModule { dim: m.dim, generators: m.generators, label: m.label }
    }
}

fn identity(n: usize) -> IMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &IMatrix, b: &IMatrix) -> Option<IMatrix> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = out[i][j].checked_add(a[i][k].checked_mul(b[k][j])?)?;
            }
        }
    }
    Some(out)
}

fn mat_vec(a: &IMatrix, v: &[i64]) -> Vec<i64> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// All elements of the group generated by `gens`, in breadth-first order
/// starting from the identity.
pub fn close_group(dim: usize, gens: &[IMatrix], cap: usize) -> Result<Vec<IMatrix>> {
    let id = identity(dim);
    let mut seen: HashSet<IMatrix> = HashSet::from([id.clone()]);
    let mut elements = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let h = mat_mul(g, &elements[i])
                .ok_or_else(|| Error::invalid("generated group is not finite (entries overflow)"))?;
            if seen.insert(h.clone()) {
                if elements.len() >= cap {
                    return Err(Error::unsupported(format!(
                        "generated group exceeds the closure cap of {cap} elements"
                    )));
                }
                elements.push(h);
                queue.push_back(elements.len() - 1);
            }
        }
    }
    Ok(elements)
}

impl GaloisModule {
    /// Validate the generators (square, determinant ±1) and close the group.
    pub fn new(dim: usize, generators: Vec<IMatrix>, label: Option<String>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("module dimension must be positive"));
        }
        for (k, g) in generators.iter().enumerate() {
            if g.len() != dim || g.iter().any(|r| r.len() != dim) {
                return Err(Error::invalid(format!("generator {k} is not a {dim}x{dim} matrix")));
            }
            let det = linalg::det_i64(g);
            if det.abs() != BigInt::one() {
                return Err(Error::invalid(format!("generator {k} has determinant {det}, not ±1")));
            }
        }
        let elements = close_group(dim, &generators, CLOSURE_CAP)?;
        Ok(GaloisModule { dim, generators, label, elements })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[IMatrix] {
        &self.generators
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Group elements in breadth-first generation order.
    pub fn elements(&self) -> &[IMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Rank of the sublattice fixed by every generator.
    pub fn fixed_sublattice_rank(&self) -> usize {
        let stacked: Vec<Vec<i64>> = self
            .generators
            .iter()
            .flat_map(|g| (0..self.dim).map(move |i| (0..self.dim).map(|j| g[i][j] - i64::from(i == j)).collect()))
            .collect();
        if stacked.is_empty() {
            return self.dim;
        }
        self.dim - linalg::rank(&linalg::to_rational(&stacked))
    }

    /// Dimension of the ℚ-span of the orbit of `v`.
    pub fn orbit_span_rank(&self, v: &[i64]) -> usize {
        let orbit: Vec<Vec<i64>> = self.elements.iter().map(|g| mat_vec(g, v)).collect();
        linalg::rank(&linalg::to_rational(&orbit))
    }

    /// Basis of the commutant `{X : Xg = gX for all generators}` over ℚ.
    pub fn commutant_basis(&self) -> Vec<QMatrix> {
        let n = self.dim;
        // unknown X[a][b] at index a*n + b; equation (Xg − gX)[i][j] = 0
        let mut eqs: QMatrix = Vec::new();
        for g in &self.generators {
            for i in 0..n {
                for j in 0..n {
                    let mut row = vec![BigRational::zero(); n * n];
                    for k in 0..n {
                        row[i * n + k] += BigRational::from_integer(g[k][j].into());
                        row[k * n + j] -= BigRational::from_integer(g[i][k].into());
                    }
                    eqs.push(row);
                }
            }
        }
        let sols = if eqs.is_empty() {
            linalg::identity(n * n)
        } else {
            linalg::kernel(&eqs, n * n)
        };
        sols.into_iter().map(|v| v.chunks(n).map(<[BigRational]>::to_vec).collect()).collect()
    }

    /// Whether `ℤ^dim ⊗ ℚ` is an irreducible ℚ-representation.
    ///
    /// A proper invariant subspace is searched for among the orbit spans of
    /// the standard basis vectors and of 32 seeded random vectors. Failing
    /// that, the commutant algebra is examined: dimension one, or a
    /// commutative commutant generated by a single element with irreducible
    /// minimal polynomial, proves irreducibility; an element with reducible
    /// minimal polynomial proves reducibility. Other situations are reported
    /// as [`Error::Inconclusive`].
    pub fn is_q_irreducible(&self) -> Result<bool> {
        let n = self.dim;
        if n == 1 {
            return Ok(true);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(IRREDUCIBILITY_SEED);
        let basis = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>());
        let random: Vec<Vec<i64>> = (0..RANDOM_TRIALS)
            .map(|_| loop {
                let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                if v.iter().any(|&x| x != 0) {
                    break v;
                }
            })
            .collect();
        for v in basis.chain(random) {
            if self.orbit_span_rank(&v) < n {
                return Ok(false);
            }
        }
        let comm = self.commutant_basis();
        if comm.len() == 1 {
            return Ok(true);
        }
        let commutative = comm
            .iter()
            .enumerate()
            .all(|(i, a)| comm[i + 1..].iter().all(|b| linalg::mat_mul(a, b) == linalg::mat_mul(b, a)));
        let mut candidates: Vec<QMatrix> = comm.clone();
        for _ in 0..RANDOM_TRIALS {
            let coeffs: Vec<i64> = comm.iter().map(|_| rng.gen_range(-5..=5)).collect();
            let mut x = vec![vec![BigRational::zero(); n]; n];
            for (c, b) in coeffs.iter().zip(&comm) {
                for (xr, br) in x.iter_mut().zip(b) {
                    for (xe, be) in xr.iter_mut().zip(br) {
                        *xe += be * BigRational::from_integer((*c).into());
                    }
                }
            }
            candidates.push(x);
        }
        let mut unknown = false;
        for x in &candidates {
            let m = poly::minimal_polynomial(x);
            match poly::irreducibility(&m) {
                Irreducibility::Reducible => return Ok(false),
                Irreducibility::Irreducible if commutative && m.len() - 1 == comm.len() => return Ok(true),
                Irreducibility::Irreducible => {}
                Irreducibility::Unknown => unknown = true,
            }
        }
        Err(Error::Inconclusive(format!(
            "commutant of dimension {} could not be classified{}",
            comm.len(),
            if unknown { " (minimal polynomial factorization undecided)" } else { "" }
        )))
    }

    /// Find `μ = σχ − χ` for the first group element `σ` moving `χ`, and the
    /// largest elementary divisor `d` of the lattice spanned by the orbit of
    /// `μ`, so that `d·ℤ^dim` lies in that lattice.
    pub fn unscramble_exponent(&self, chi: &[i64]) -> Result<Unscrambled> {
        if chi.len() != self.dim {
            return Err(Error::invalid(format!("character has length {}, expected {}", chi.len(), self.dim)));
        }
        if chi.iter().all(|&x| x == 0) {
            return Err(Error::invalid("character must be nonzero"));
        }
        let fixed = self.fixed_sublattice_rank();
        if fixed > 0 {
            return Err(Error::invalid(format!("module has fixed sublattice of rank {fixed}; it must be 0")));
        }
        let (sigma_index, image) = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, g)| (i, mat_vec(g, chi)))
            .find(|(_, v)| v != chi)
            .ok_or_else(|| Error::invalid("no group element moves the character"))?;
        let mu: Vec<i64> = image.iter().zip(chi).map(|(a, b)| a - b).collect();
        let mut seen = HashSet::new();
        let orbit: Vec<Vec<i64>> =
            self.elements.iter().map(|g| mat_vec(g, &mu)).filter(|v| seen.insert(v.clone())).collect();
        let divisors = intmat::elementary_divisors(&intmat::from_i64(&orbit));
        if divisors.len() < self.dim {
            return Err(Error::invalid(format!(
                "orbit of μ spans rank {} < {}: the module is not irreducible",
                divisors.len(),
                self.dim
            )));
        }
        let d = divisors.last().expect("full rank").clone();
        let d = d.to_u64().ok_or_else(|| Error::Overflow("elementary divisor exceeds 64 bits".into()))?;
        Ok(Unscrambled { sigma_index, mu, d, orbit })
    }
}

/// Result of [`GaloisModule::unscramble_exponent`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unscrambled {
    /// Position of `σ` in the generation order of the group.
    pub sigma_index: usize,
    pub mu: Vec<i64>,
    pub d: u64,
    /// The distinct vectors `g·μ`.
    pub orbit: Vec<Vec<i64>>,
}

pub fn fixed_sublattice_rank(module: &GaloisModule) -> usize {
    module.fixed_sublattice_rank()
}

pub fn is_q_irreducible(module: &GaloisModule) -> Result<bool> {
    module.is_q_irreducible()
}

pub fn unscramble_exponent(module: &GaloisModule, chi: &[i64]) -> Result<Unscrambled> {
    module.unscramble_exponent(chi)
}

/// The weight lattice of `family`/`rank` in the basis of fundamental
/// weights, with the simple reflections acting by
/// `(s_i x)_j = x_j − x_i·A_ij`.
pub fn weyl_weight_module(family: Family, rank: u32) -> Result<GaloisModule> {
    let sys = RootSystem::new(family, rank)?;
    let a = sys.cartan_matrix();
    let n = rank as usize;
    let gens: Vec<IMatrix> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| i64::from(j == k) - if k == i { a[i][j] } else { 0 }).collect())
                .collect()
        })
        .collect();
    GaloisModule::new(n, gens, Some(format!("W({family}{rank}) on the weight lattice")))
}

/// Degree data for a family of tori split over a common Galois extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDecomposition {
    pub big_group_order: u64,
    /// `[K_{T_i} : K]` for each torus.
    pub quotient_orders: Vec<u64>,
    /// Degree of the compositum of the splitting fields.
    pub compositum_order: u64,
}

impl FamilyDecomposition {
    pub fn validate(&self) -> Result<()> {
        if self.big_group_order == 0 || self.compositum_order == 0 || self.quotient_orders.contains(&0) {
            return Err(Error::invalid("group orders must be positive"));
        }
        if self.quotient_orders.is_empty() {
            return Err(Error::invalid("a family needs at least one torus"));
        }
        let prod = self.product()?;
        if prod % self.compositum_order as u128 != 0 {
            return Err(Error::invalid("compositum order must divide the product of the quotient orders"));
        }
        if !self.big_group_order.is_multiple_of(self.compositum_order) {
            return Err(Error::invalid("compositum order must divide the big group order"));
        }
        Ok(())
    }

    fn product(&self) -> Result<u128> {
        self.quotient_orders
            .iter()
            .try_fold(1u128, |acc, &q| acc.checked_mul(q as u128))
            .ok_or_else(|| Error::Overflow("product of quotient orders".into()))
    }

    /// Degrees read off from modules whose generators are the images of
    /// the same list of Galois generators: the compositum is the image of
    /// the joint (block-diagonal) action.
    pub fn from_joint_action(modules: &[GaloisModule]) -> Result<Self> {
        let Some(first) = modules.first() else { return Err(Error::invalid("no modules")) };
        let k = first.generators.len();
        if modules.iter().any(|m| m.generators.len() != k) {
            return Err(Error::invalid("all modules need the same number of generators"));
        }
        let total: usize = modules.iter().map(|m| m.dim).sum();
        let joint: Vec<IMatrix> = (0..k)
            .map(|g| {
                let mut big = vec![vec![0i64; total]; total];
                let mut off = 0;
                for m in modules {
                    for i in 0..m.dim {
                        for j in 0..m.dim {
                            big[off + i][off + j] = m.generators[g][i][j];
                        }
                    }
                    off += m.dim;
                }
                big
            })
            .collect();
        let compositum = close_group(total, &joint, CLOSURE_CAP)?.len() as u64;
        Ok(FamilyDecomposition {
            big_group_order: compositum,
            quotient_orders: modules.iter().map(|m| m.order() as u64).collect(),
            compositum_order: compositum,
        })
    }
}

/// Linear disjointness at the level of degrees: the compositum degree is
/// the product of the individual degrees.
pub fn independence_check(decomposition: &FamilyDecomposition) -> Result<bool> {
    decomposition.validate()?;
    Ok(decomposition.product()? == decomposition.compositum_order as u128)
}

/// Split ranks of a torus at a finite set of places and over the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalRankProfile {
    pub places: Vec<String>,
    pub local_fixed_ranks: Vec<usize>,
    pub global_fixed_rank: usize,
}

impl LocalRankProfile {
    pub fn validate(&self) -> Result<()> {
        if self.places.len() != self.local_fixed_ranks.len() {
            return Err(Error::invalid("one local rank per place is required"));
        }
        let distinct: HashSet<&String> = self.places.iter().collect();
        if distinct.len() != self.places.len() {
            return Err(Error::invalid("place labels must be distinct"));
        }
        if let Some(&m) = self.local_fixed_ranks.iter().min() {
            if self.global_fixed_rank > m {
                return Err(Error::invalid("global split rank exceeds a local split rank"));
            }
        }
        Ok(())
    }

    /// Ranks from the global module and the restrictions to the
    /// decomposition groups at each place.
    pub fn from_modules(global: &GaloisModule, locals: &[(String, GaloisModule)]) -> Result<Self> {
        if locals.iter().any(|(_, m)| m.dim != global.dim) {
            return Err(Error::invalid("local modules must have the global dimension"));
        }
        let profile = LocalRankProfile {
            places: locals.iter().map(|(p, _)| p.clone()).collect(),
            local_fixed_ranks: locals.iter().map(|(_, m)| m.fixed_sublattice_rank()).collect(),
            global_fixed_rank: global.fixed_sublattice_rank(),
        };
        profile.validate()?;
        Ok(profile)
    }
}

/// Free rank `Σ_v rk_{K_v} T − rk_K T` of the S-unit group of the torus.
pub fn dirichlet_rank(profile: &LocalRankProfile) -> Result<usize> {
    profile.validate()?;
    Ok(profile.local_fixed_ranks.iter().sum::<usize>() - profile.global_fixed_rank)
}

/// Count of group elements of each order, handy for sanity checks.
pub fn element_order_histogram(module: &GaloisModule) -> HashMap<usize, usize> {
    let id = identity(module.dim);
    let mut hist = HashMap::new();
    for g in &module.elements {
        let mut k = 1;
        let mut p = g.clone();
        while p != id {
            p = mat_mul(&p, g).expect("finite group");
            k += 1;
        }
        *hist.entry(k).or_insert(0) += 1;
    }
    hist
}
