use crate::error::{invalid, Result};

/// `sqrt(2 x log log x)` for `x >= 3`, held at its value at 3 below.
pub fn lil_phi(x: f64) -> f64 {
    let x = x.max(3.0);
    (2.0 * x * x.ln().ln()).sqrt()
}

/// First index of the counting window for a sequence of length `n`.
pub fn window_start(n: usize, lower_index: usize) -> usize {
    let e = ((n as f64).ln().max(0.0).sqrt()).exp().ceil() as usize;
    e.max(lower_index).max(1)
}

/// Number of `k` (1-based) in `[max(lower_index, ceil(e^sqrt(log n))), n]`
/// with `s[k] >= phi(s2[k]) / 2`.
pub fn lil_count(s: &[f64], s2: &[f64], lower_index: usize) -> Result<usize> {
    if s.len() != s2.len() {
        return invalid("sequence and variance lengths differ");
    }
    if s2.iter().any(|v| !(*v > 0.0)) || s2.windows(2).any(|w| w[1] < w[0]) {
        return invalid("variances must be positive and nondecreasing");
    }
    let n = s.len();
    let start = window_start(n, lower_index);
    Ok((start..=n).filter(|&k| s[k - 1] >= 0.5 * lil_phi(s2[k - 1])).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes() {
        let s2: Vec<f64> = (1..=200).map(|k| k as f64).collect();
        let s: Vec<f64> = s2.iter().map(|&v| lil_phi(v)).collect();
        let start = window_start(200, 1);
        assert_eq!(lil_count(&s, &s2, 1).unwrap(), 200 - start + 1);
        assert_eq!(lil_count(&vec![-1.0; 200], &s2, 1).unwrap(), 0);
        assert!(lil_count(&s[..5], &s2, 1).is_err());
        assert_eq!(lil_phi(1.0), lil_phi(3.0));
    }
}
