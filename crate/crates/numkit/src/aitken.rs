/// One pass of Aitken delta-squared acceleration. Input is a sequence of
/// partial limits; output has length max(len - 2, 0). Terms where the
/// second difference vanishes are passed through unchanged.
pub fn aitken_accelerate(seq: &[f64]) -> Vec<f64> {
    if seq.len() < 3 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(seq.len() - 2);
    for w in seq.windows(3) {
        let (a, b, c) = (w[0], w[1], w[2]);
        let denom = c - 2.0 * b + a;
        if denom.abs() < 1e-300 {
            out.push(c);
        } else {
            let d = c - b;
            out.push(c - d * d / denom);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_sequence_jumps_to_limit() {
        // x_n = L + r^n converges linearly; one Aitken pass is exact.
        let l = 0.75;
        let r: f64 = 0.6;
        let seq: Vec<f64> = (0..8).map(|n| l + r.powi(n)).collect();
        let acc = aitken_accelerate(&seq);
        for v in acc {
            assert!((v - l).abs() < 1e-12);
        }
    }

    #[test]
    fn accelerates_slow_series() {
        // partial sums of Leibniz pi/4 series
        let mut partial = Vec::new();
        let mut s = 0.0;
        for n in 0..20 {
            s += if n % 2 == 0 { 1.0 } else { -1.0 } / (2 * n + 1) as f64;
            partial.push(s);
        }
        let acc = aitken_accelerate(&aitken_accelerate(&partial));
        let target = std::f64::consts::FRAC_PI_4;
        let plain_err = (partial.last().unwrap() - target).abs();
        let acc_err = (acc.last().unwrap() - target).abs();
        assert!(acc_err < plain_err / 100.0);
    }

    #[test]
    fn short_input() {
        assert!(aitken_accelerate(&[1.0, 2.0]).is_empty());
    }
}
