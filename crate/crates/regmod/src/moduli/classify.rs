use super::Verdict;

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub value: f64,
    pub verdict: Verdict,
    pub uncertainty: f64,
    pub note: Option<&'static str>,
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

/// Least-squares slope of `ln Q` against `ln ρ`; `Q ~ ρ^β`.
fn log_slope(pts: &[(f64, f64)]) -> Option<f64> {
    let p: Vec<(f64, f64)> =
        pts.iter().filter(|(r, q)| *r > 0.0 && *q > 0.0 && q.is_finite()).map(|(r, q)| (r.ln(), q.ln())).collect();
    if p.len() < 2 {
        return None;
    }
    let n = p.len() as f64;
    let mx = p.iter().map(|a| a.0).sum::<f64>() / n;
    let my = p.iter().map(|a| a.1).sum::<f64>() / n;
    let sxx: f64 = p.iter().map(|a| (a.0 - mx).powi(2)).sum();
    if sxx <= 0.0 {
        return None;
    }
    Some(p.iter().map(|a| (a.0 - mx) * (a.1 - my)).sum::<f64>() / sxx)
}

/// Quotients at or below this are treated as zero. Shell infima that are
/// truly zero are only approached as samples reach the membership
/// tolerance, which leaves flat traces around `1e-5` instead of `0`.
pub const ZERO_FLOOR: f64 = 1e-3;

/// Classifies a `(ρ, quotient)` trace ordered by decreasing `ρ`.
///
/// The trailing window is the last `⌈n/3⌉` quotients. Zero: the window is
/// nonincreasing and either ends below a tenth of the leading-window median or
/// decays like `ρ^β` with `β ≥ 1/4`. Divergent is the mirror image. A flat
/// log-log trend is positive; a slow monotone drift is inconclusive. A
/// trailing window entirely below [`ZERO_FLOOR`] is zero, and so is a
/// non-divergent window whose minimum falls below it.
pub fn classify(trace: &[(f64, f64)]) -> Classification {
    let n = trace.len();
    if n == 0 {
        return Classification { value: f64::INFINITY, verdict: Verdict::Positive, uncertainty: 0.0, note: Some("no admissible samples") };
    }
    let w = n.div_ceil(3);
    let tail: Vec<f64> = trace[n - w..].iter().map(|t| t.1).collect();
    let head: Vec<f64> = trace[..w].iter().map(|t| t.1).collect();
    if trace.iter().all(|t| t.1 == f64::INFINITY) {
        return Classification { value: f64::INFINITY, verdict: Verdict::Positive, uncertainty: 0.0, note: Some("interior point: no admissible samples") };
    }
    if tail.iter().all(|&q| q == f64::INFINITY) {
        return Classification { value: f64::INFINITY, verdict: Verdict::Positive, uncertainty: 0.0, note: Some("no admissible samples at small radii") };
    }
    let last = *tail.last().unwrap();
    let low = tail.iter().cloned().fold(f64::INFINITY, f64::min);
    let high = tail.iter().cloned().filter(|q| q.is_finite()).fold(0.0, f64::max);
    if tail.iter().all(|&q| q <= ZERO_FLOOR) {
        return Classification { value: 0.0, verdict: Verdict::Zero, uncertainty: high, note: None };
    }
    let fm = median(&head);
    let dec = tail.windows(2).all(|p| p[1] <= p[0] * (1.0 + 1e-9));
    let inc = tail.windows(2).all(|p| p[1] >= p[0] * (1.0 - 1e-9));
    let half = &trace[n - n.div_ceil(2)..];
    let beta = log_slope(half).unwrap_or(0.0);
    if dec && (last < fm / 10.0 || beta >= 0.25) {
        return Classification { value: 0.0, verdict: Verdict::Zero, uncertainty: last, note: None };
    }
    if inc && (last > 10.0 * fm || beta <= -0.25 || last == f64::INFINITY) {
        return Classification { value: f64::INFINITY, verdict: Verdict::Divergent, uncertainty: 0.0, note: None };
    }
    if low <= ZERO_FLOOR {
        return Classification { value: 0.0, verdict: Verdict::Zero, uncertainty: high, note: Some("trailing minimum below the zero floor") };
    }
    if (dec && beta >= 0.1) || (inc && beta <= -0.1) {
        return Classification { value: low, verdict: Verdict::Inconclusive, uncertainty: high - low + 0.01 * low, note: Some("slow monotone drift") };
    }
    Classification { value: low, verdict: Verdict::Positive, uncertainty: (high - low) + 0.01 * low, note: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trace(f: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
        (0..8).map(|k| 0.5f64.powi(k)).map(|r| (r, f(r))).collect()
    }

    #[test]
    fn constant_is_positive() {
        let c = classify(&trace(|_| 0.7));
        assert_eq!(c.verdict, Verdict::Positive);
        assert!((c.value - 0.7).abs() < 1e-12);
    }

    #[test]
    fn sqrt_decay_is_zero() {
        assert_eq!(classify(&trace(|r| r.sqrt())).verdict, Verdict::Zero);
        assert_eq!(classify(&trace(|r| r)).verdict, Verdict::Zero);
    }

    #[test]
    fn blowup_is_divergent() {
        assert_eq!(classify(&trace(|r| r.powf(-0.5))).verdict, Verdict::Divergent);
    }

    #[test]
    fn converging_from_above_is_positive() {
        let c = classify(&trace(|r| 1.0 + 2.0 * r * r));
        assert_eq!(c.verdict, Verdict::Positive);
        assert!(c.value >= 1.0 && c.value < 1.001);
    }

    #[test]
    fn all_infinite_is_flagged() {
        let c = classify(&trace(|_| f64::INFINITY));
        assert_eq!(c.verdict, Verdict::Positive);
        assert!(c.value.is_infinite());
    }
}
