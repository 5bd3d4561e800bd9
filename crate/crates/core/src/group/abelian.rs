use std::collections::BTreeMap;
use std::fmt;

use super::FiniteGroup;

/// A finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with
/// `d_1 | d_2 | … | d_k` and every `d_i ≥ 2`.
///
/// The invariant-factor form is unique, so derived equality is isomorphism.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl FGAbelianGroup {
    /// Direct sum of `Z^free_rank` with cyclic groups of the given orders,
    /// normalized to invariant factors. Orders of 1 are dropped; an order of 0
    /// stands for an infinite cyclic summand.
    pub fn new(free_rank: usize, cyclic_orders: impl IntoIterator<Item = u64>) -> Self {
        let mut free_rank = free_rank;
        let mut prime_powers: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for d in cyclic_orders {
            match d {
                0 => free_rank += 1,
                1 => {}
                d => {
                    for (p, e) in factorize(d) {
                        prime_powers.entry(p).or_default().push(e);
                    }
                }
            }
        }
        let len = prime_powers.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![1u64; len];
        for (p, mut exps) in prime_powers {
            exps.sort_unstable();
            // largest exponents go to the last factors
            let offset = len - exps.len();
            for (i, e) in exps.into_iter().enumerate() {
                torsion[offset + i] *= p.pow(e);
            }
        }
        FGAbelianGroup { free_rank, torsion }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(0, [order])
    }

    /// Invariant factors of a finite abelian group given by its table.
    ///
    /// For each prime `p`, the number of cyclic `p`-factors of exponent at
    /// least `k` is `log_p |A[p^k]| - log_p |A[p^(k-1)]|`.
    pub fn from_finite_abelian(a: &FiniteGroup) -> Self {
        debug_assert!(a.is_abelian());
        let orders: Vec<u64> = a.elements().map(|x| a.element_order(x) as u64).collect();
        let mut cyclic = Vec::new();
        for (p, e_max) in factorize(a.order() as u64) {
            let log_count = |k: u32| -> u32 {
                let pk = p.pow(k);
                let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
                let mut l = 0;
                let mut c = count;
                while c > 1 {
                    c /= p;
                    l += 1;
                }
                l
            };
            for k in 1..=e_max {
                let at_least_k = log_count(k) - log_count(k - 1);
                let at_least_next = if k < e_max { log_count(k + 1) - log_count(k) } else { 0 };
                for _ in 0..(at_least_k - at_least_next) {
                    cyclic.push(p.pow(k));
                }
            }
        }
        Self::new(0, cyclic)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order when finite.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &FGAbelianGroup) -> FGAbelianGroup {
        FGAbelianGroup::new(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).copied(),
        )
    }
}

impl<'a> std::iter::Sum<&'a FGAbelianGroup> for FGAbelianGroup {
    fn sum<I: Iterator<Item = &'a FGAbelianGroup>>(iter: I) -> Self {
        iter.fold(FGAbelianGroup::trivial(), |acc, g| acc.direct_sum(g))
    }
}

impl std::iter::Sum for FGAbelianGroup {
    fn sum<I: Iterator<Item = FGAbelianGroup>>(iter: I) -> Self {
        iter.fold(FGAbelianGroup::trivial(), |acc, g| acc.direct_sum(&g))
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}
