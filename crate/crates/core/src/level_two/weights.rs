use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Highest weight `ω_s + ω_{s+k}` of `U_q(sl_N)`, the row vector `(2^s, 1^k, 0^{N-s-k})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HighestWeight {
    #[serde(rename = "N")]
    pub n: usize,
    pub s: usize,
    pub k: usize,
}

impl HighestWeight {
    pub fn new(n: usize, s: usize, k: usize) -> Result<Self> {
        if n < 2 {
            return invalid("N must be at least 2");
        }
        if s + k > n {
            return invalid(format!("s + k = {} exceeds N = {n}", s + k));
        }
        if n > 16 {
            return invalid("N above 16 is not supported");
        }
        Ok(HighestWeight { n, s, k })
    }

    pub fn lambda(&self) -> Weight {
        let v = (0..self.n)
            .map(|i| u8::from(i < self.s) + u8::from(i < self.s + self.k))
            .collect();
        Weight(v)
    }

    /// `μ` is a weight of `V`: entries in `{0,1,2}`, the right total, dominated partial sums and at most `s` twos.
    ///
    /// The partial-sum test alone lets through vectors such as `(0,2,0)` for `λ = (1,1,0)`; the count of
    /// twos is what makes the test exact.
    pub fn is_admissible(&self, mu: &Weight) -> bool {
        self.satisfies_partial_sums(mu) && mu.twos().len() <= self.s
    }

    /// The three listed conditions without the bound on twos.
    pub fn satisfies_partial_sums(&self, mu: &Weight) -> bool {
        let lam = self.lambda();
        if mu.0.len() != self.n || mu.0.iter().any(|&x| x > 2) {
            return false;
        }
        let (mut a, mut b) = (0usize, 0usize);
        for (x, y) in mu.0.iter().zip(&lam.0) {
            a += *x as usize;
            b += *y as usize;
            if a > b {
                return false;
            }
        }
        a == b
    }

    /// Every weight of `V`, in lexicographically decreasing order (so `λ` comes first).
    pub fn admissible_weights(&self) -> Vec<Weight> {
        let mut out = Vec::new();
        let mut cur = vec![0u8; self.n];
        self.fill(0, &mut cur, &mut out);
        out
    }

    fn fill(&self, i: usize, cur: &mut Vec<u8>, out: &mut Vec<Weight>) {
        if i == self.n {
            let w = Weight(cur.clone());
            if self.is_admissible(&w) {
                out.push(w);
            }
            return;
        }
        for x in (0..=2u8).rev() {
            cur[i] = x;
            self.fill(i + 1, cur, out);
        }
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.n {
            return invalid(format!("index {i} outside 1..={}", self.n - 1));
        }
        Ok(())
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(N={}, s={}, k={})", self.n, self.s, self.k)
    }
}

/// Which raising or lowering functor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    E,
    F,
}

/// A weight `μ = (μ_1, …, μ_N)` with entries in `{0,1,2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Weight(Vec<u8>);

impl Weight {
    pub fn new(v: Vec<u8>) -> Result<Self> {
        if v.iter().any(|&x| x > 2) {
            return invalid("weight entries must lie in {0,1,2}");
        }
        Ok(Weight(v))
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    /// 1-based entry.
    pub fn at(&self, i: usize) -> u8 {
        self.0[i - 1]
    }

    /// `M_μ`, the 1-based positions of the ones.
    pub fn ones(&self) -> Vec<usize> {
        self.positions(1)
    }

    /// `N_μ`, the 1-based positions of the twos.
    pub fn twos(&self) -> Vec<usize> {
        self.positions(2)
    }

    /// `m(μ)`
    pub fn m(&self) -> usize {
        self.0.iter().filter(|&&x| x == 1).count()
    }

    /// `μ ± ε_i` if its entries stay in range.
    pub fn step(&self, i: usize, dir: Direction) -> Option<Weight> {
        let (a, b) = (self.at(i), self.at(i + 1));
        let (a, b) = match dir {
            Direction::E if a < 2 && b > 0 => (a + 1, b - 1),
            Direction::F if a > 0 && b < 2 => (a - 1, b + 1),
            _ => return None,
        };
        let mut v = self.0.clone();
        v[i - 1] = a;
        v[i] = b;
        Some(Weight(v))
    }

    /// `μ_i − μ_{i+1}`, the exponent of `K_i` on this weight space.
    pub fn k_exponent(&self, i: usize) -> i32 {
        self.at(i) as i32 - self.at(i + 1) as i32
    }

    fn positions(&self, x: u8) -> Vec<usize> {
        (1..=self.0.len()).filter(|&i| self.0[i - 1] == x).collect()
    }
}

impl TryFrom<Vec<u8>> for Weight {
    type Error = crate::error::Error;
    fn try_from(v: Vec<u8>) -> Result<Self> {
        Weight::new(v)
    }
}

impl From<Weight> for Vec<u8> {
    fn from(w: Weight) -> Vec<u8> {
        w.0
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}
