use serde::Serialize;

/// `dim Hom(V_k ⊗ V_l, V^{⊗n})` for `U_q(sl_2)` by Clebsch–Gordan, with the multiplicity data behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2Dimension {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub dimension: u128,
    /// `(j, [V_j : V^{⊗n}], [V_j : V_k ⊗ V_l])` for every `j` occurring in both.
    pub multiplicities: Vec<(usize, u128, u128)>,
}

/// Multiplicities of `V_j` in `V^{⊗n}`, indexed by highest weight `j`, from `V_j ⊗ V = V_{j+1} ⊕ V_{j-1}`.
pub fn tensor_power_multiplicities(n: usize) -> Vec<u128> {
    let mut m = vec![0u128; n + 1];
    m[0] = 1;
    for step in 0..n {
        let mut next = vec![0u128; n + 1];
        for j in 0..=step {
            if m[j] == 0 {
                continue;
            }
            next[j + 1] += m[j];
            if j > 0 {
                next[j - 1] += m[j];
            }
        }
        m = next;
    }
    m
}

pub fn sl2_invariant_dimension(k: usize, l: usize, n: usize) -> Sl2Dimension {
    let power = tensor_power_multiplicities(n);
    let mut multiplicities = Vec::new();
    let mut dimension = 0;
    // V_k ⊗ V_l = V_{|k-l|} ⊕ V_{|k-l|+2} ⊕ … ⊕ V_{k+l}
    for j in (k.abs_diff(l)..=k + l).step_by(2) {
        if j <= n && power[j] > 0 {
            multiplicities.push((j, power[j], 1));
            dimension += power[j];
        }
    }
    Sl2Dimension {
        k,
        l,
        n,
        dimension,
        multiplicities,
    }
}
