//! Nerves of finite groupoids and integral homology of classifying spaces.

mod snf;

pub use snf::{smith_normal_form, smith_normal_form_certified, IntegerMatrix, SmithForm, SnfCertificate};

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Limits, Result};
use crate::group::FGAbelianGroup;
use crate::groupoid::FiniteGroupoid;

/// Composable arrow strings `x_0 -g_1-> x_1 -g_2-> … -g_n-> x_n` up to length
/// `max_dim`. Dimension 0 holds the objects.
#[derive(Clone, Debug)]
pub struct TruncatedNerve {
    groupoid: FiniteGroupoid,
    max_dim: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

/// Number of composable strings of each length up to `d`, saturating.
fn simplex_counts(g: &FiniteGroupoid, d: usize) -> Vec<u128> {
    // starting[x] = strings of the current length that start at x
    let mut starting: Vec<u128> = vec![1; g.num_objects()];
    let mut counts = vec![g.num_objects() as u128];
    for _ in 1..=d {
        starting = g
            .objects()
            .map(|x| {
                g.outgoing(x)
                    .iter()
                    .fold(0u128, |acc, &a| acc.saturating_add(starting[g.target(a)]))
            })
            .collect();
        counts.push(starting.iter().fold(0u128, |a, &b| a.saturating_add(b)));
    }
    counts
}

impl TruncatedNerve {
    pub fn new(g: &FiniteGroupoid, d: usize, limits: &Limits) -> Result<Self> {
        if d == 0 {
            return Err(Error::Invalid("nerve truncation must be at least 1".into()));
        }
        let total = simplex_counts(g, d).iter().fold(0u128, |a, &b| a.saturating_add(b));
        if total > limits.simplex_budget as u128 {
            return Err(Error::SizeBudgetExceeded {
                needed: usize::try_from(total).unwrap_or(usize::MAX),
                budget: limits.simplex_budget,
            });
        }
        let mut simplices: Vec<Vec<Vec<usize>>> = vec![g.objects().map(|x| vec![x]).collect()];
        simplices.push(g.arrows().map(|a| vec![a]).collect());
        for n in 2..=d {
            let mut next = Vec::new();
            for s in &simplices[n - 1] {
                let end = g.target(*s.last().unwrap());
                for &a in g.outgoing(end) {
                    let mut t = s.clone();
                    t.push(a);
                    next.push(t);
                }
            }
            simplices.push(next);
        }
        let index = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(TruncatedNerve {
            groupoid: g.clone(),
            max_dim: d,
            simplices,
            index,
        })
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    /// Simplices of dimension `n`. In dimension 0 each is a one-element list
    /// holding an object.
    pub fn simplices(&self, n: usize) -> &[Vec<usize>] {
        &self.simplices[n]
    }

    pub fn count(&self, n: usize) -> usize {
        self.simplices[n].len()
    }

    /// Contains a unit arrow. Objects are never degenerate.
    pub fn is_degenerate(&self, n: usize, s: usize) -> bool {
        n > 0 && self.simplices[n][s].iter().any(|&a| self.groupoid.is_unit(a))
    }

    /// Face `d_i` of simplex `s` in dimension `n >= 1`: drop the first arrow
    /// (`i = 0`), drop the last (`i = n`), or compose arrows `i` and `i+1`.
    pub fn face(&self, n: usize, i: usize, s: usize) -> usize {
        assert!(n >= 1 && n <= self.max_dim && i <= n, "face index out of range");
        let g = &self.groupoid;
        let simplex = &self.simplices[n][s];
        if n == 1 {
            let a = simplex[0];
            return if i == 0 { g.target(a) } else { g.source(a) };
        }
        let face: Vec<usize> = if i == 0 {
            simplex[1..].to_vec()
        } else if i == n {
            simplex[..n - 1].to_vec()
        } else {
            let mut f = simplex[..i - 1].to_vec();
            f.push(g.compose(simplex[i], simplex[i - 1]));
            f.extend_from_slice(&simplex[i + 1..]);
            f
        };
        self.index[n - 1][&face]
    }
}

pub fn nerve(g: &FiniteGroupoid, d: usize, limits: &Limits) -> Result<TruncatedNerve> {
    TruncatedNerve::new(g, d, limits)
}

/// Normalized chains: the basis in dimension `n` is the nondegenerate
/// simplices in nerve order, and `boundaries[n - 1]` is `∂_n: C_n -> C_{n-1}`
/// (rows index `C_{n-1}`).
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub basis: Vec<Vec<usize>>,
    pub boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    pub fn rank(&self, n: usize) -> usize {
        self.basis[n].len()
    }
}

pub fn chain_complex(nerve: &TruncatedNerve) -> ChainComplex {
    let d = nerve.max_dim();
    let basis: Vec<Vec<usize>> = (0..=d)
        .map(|n| (0..nerve.count(n)).filter(|&s| !nerve.is_degenerate(n, s)).collect())
        .collect();
    let position: Vec<HashMap<usize, usize>> = basis
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, &s)| (s, i)).collect())
        .collect();
    let mut boundaries = Vec::with_capacity(d);
    for n in 1..=d {
        let mut m = IntegerMatrix::zeros(basis[n - 1].len(), basis[n].len());
        for (col, &s) in basis[n].iter().enumerate() {
            for i in 0..=n {
                if let Some(&row) = position[n - 1].get(&nerve.face(n, i, s)) {
                    m.add_to(row, col, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex { basis, boundaries }
}

fn to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::Invalid(format!("torsion coefficient {x} does not fit in 64 bits")))
}

/// `H_n` of a chain complex whose top dimension is at least `n + 1`.
fn homology_of(cc: &ChainComplex, n: usize) -> Result<FGAbelianGroup> {
    let rank_in = if n == 0 {
        0
    } else {
        smith_normal_form(&cc.boundaries[n - 1]).rank()
    };
    let out = smith_normal_form(&cc.boundaries[n]);
    let free = cc.rank(n) - rank_in - out.rank();
    let torsion = out.torsion().iter().map(to_u64).collect::<Result<Vec<u64>>>()?;
    Ok(FGAbelianGroup::new(free, torsion))
}

/// `H_n(BG; Z)`, computed on the nerve truncated at `n + 1`, one component
/// at a time.
pub fn homology(g: &FiniteGroupoid, n: usize, limits: &Limits) -> Result<FGAbelianGroup> {
    let d = n + 1;
    let components = g.components();
    let needed = simplex_counts(g, d).iter().fold(0u128, |a, &b| a.saturating_add(b));
    if needed > limits.simplex_budget as u128 {
        return Err(Error::SizeBudgetExceeded {
            needed: usize::try_from(needed).unwrap_or(usize::MAX),
            budget: limits.simplex_budget,
        });
    }
    let mut total = FGAbelianGroup::trivial();
    for class in &components.classes {
        let block = g.full_subgroupoid(class).groupoid;
        let cc = chain_complex(&TruncatedNerve::new(&block, d, limits)?);
        total = total.direct_sum(&homology_of(&cc, n)?);
    }
    Ok(total)
}
