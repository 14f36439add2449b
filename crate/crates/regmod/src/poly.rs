//! Real polynomials in one variable, coefficients in ascending order.

pub fn eval(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * t + a)
}

pub fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, &a)| k as f64 * a).collect()
}

/// Drops vanishing leading coefficients.
pub fn trim(c: &[f64]) -> Vec<f64> {
    let scale = c.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut v = c.to_vec();
    while v.len() > 1 && v.last().unwrap().abs() <= 1e-15 * scale {
        v.pop();
    }
    if v.is_empty() {
        v.push(0.0);
    }
    v
}

fn newton_polish(c: &[f64], mut t: f64) -> f64 {
    let d = derivative(c);
    for _ in 0..4 {
        let f = eval(c, t);
        let g = eval(&d, t);
        if g == 0.0 || !g.is_finite() {
            break;
        }
        let next = t - f / g;
        if !next.is_finite() || eval(c, next).abs() > f.abs() {
            break;
        }
        t = next;
    }
    t
}

fn dedup_sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<f64> = Vec::with_capacity(v.len());
    for t in v {
        match out.last() {
            Some(&l) if (t - l).abs() <= 1e-12 * (1.0 + l.abs()) => {}
            _ => out.push(t),
        }
    }
    out
}

/// Real roots of a*t^2 + b*t + c; a double root is reported once.
pub fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return vec![];
    }
    if a.abs() <= 1e-15 * scale {
        if b.abs() <= 1e-15 * scale {
            return vec![];
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    let band = 1e-14 * (b * b + (4.0 * a * c).abs());
    if disc < -band {
        return vec![];
    }
    if disc <= band {
        return vec![-b / (2.0 * a)];
    }
    let s = disc.sqrt();
    let qq = -0.5 * (b + b.signum() * s);
    let qq = if qq == 0.0 { -0.5 * s } else { qq };
    let mut r = vec![qq / a];
    if qq != 0.0 {
        r.push(c / qq);
    }
    dedup_sorted(r)
}

/// Real roots of a*t^3 + b*t^2 + c*t + d by Cardano's formulas with a Newton polish.
pub fn cubic_roots(a: f64, b: f64, c: f64, d: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs()).max(d.abs());
    if scale == 0.0 {
        return vec![];
    }
    if a.abs() <= 1e-14 * scale {
        return quadratic_roots(b, c, d);
    }
    let (bb, cc, dd) = (b / a, c / a, d / a);
    let p = cc - bb * bb / 3.0;
    let q = 2.0 * bb * bb * bb / 27.0 - bb * cc / 3.0 + dd;
    let shift = -bb / 3.0;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let band = 1e-12 * ((q / 2.0).powi(2) + (p / 3.0).powi(3).abs()) + 1e-300;
    let mut roots = Vec::with_capacity(3);
    if disc > band {
        let s = disc.sqrt();
        let y = (-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt();
        roots.push(y + shift);
    } else if p.abs() < 1e-300 {
        roots.push(shift);
    } else {
        let m = 2.0 * (-p / 3.0).max(0.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        for k in 0..3 {
            roots.push(m * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() + shift);
        }
    }
    let coeffs = [d, c, b, a];
    dedup_sorted(roots.into_iter().map(|t| newton_polish(&coeffs, t)).collect())
}

fn bisect_root(c: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = eval(c, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = eval(c, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All real roots of a polynomial of any degree, sorted ascending.
///
/// Degrees up to three use closed forms; higher degrees split the line at the
/// critical points (roots of the derivative) and bracket each monotone piece.
pub fn real_roots(c: &[f64]) -> Vec<f64> {
    let c = trim(c);
    match c.len() {
        1 => vec![],
        2 => vec![-c[0] / c[1]],
        3 => quadratic_roots(c[2], c[1], c[0]),
        4 => cubic_roots(c[3], c[2], c[1], c[0]),
        n => {
            let lead = c[n - 1];
            let bound = 1.0 + c[..n - 1].iter().fold(0.0f64, |m, a| m.max((a / lead).abs()));
            let crit = real_roots(&derivative(&c));
            let mut knots = vec![-bound];
            knots.extend(crit.iter().copied().filter(|t| t.abs() < bound));
            knots.push(bound);
            let scale = c.iter().fold(0.0f64, |m, a| m.max(a.abs()));
            let mut roots = Vec::new();
            for w in knots.windows(2) {
                let (fa, fb) = (eval(&c, w[0]), eval(&c, w[1]));
                if fa == 0.0 {
                    roots.push(w[0]);
                }
                if (fa < 0.0) != (fb < 0.0) && fa != 0.0 && fb != 0.0 {
                    roots.push(bisect_root(&c, w[0], w[1]));
                }
            }
            for &t in &crit {
                if eval(&c, t).abs() <= 1e-12 * scale * (1.0 + t.abs()).powi(n as i32 - 1) {
                    roots.push(t);
                }
            }
            if eval(&c, bound) == 0.0 {
                roots.push(bound);
            }
            dedup_sorted(roots)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_three_roots() {
        // 2t^3 - t: roots 0, +-1/sqrt(2)
        let r = cubic_roots(2.0, 0.0, -1.0, 0.0);
        assert_eq!(r.len(), 3);
        assert!((r[0] + 0.5f64.sqrt()).abs() < 1e-14);
        assert!(r[1].abs() < 1e-14);
        assert!((r[2] - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn cubic_one_root() {
        let r = cubic_roots(1.0, 0.0, 1.0, -2.0);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn quadratic_double_root() {
        assert_eq!(quadratic_roots(2.0, 0.0, 0.0), vec![0.0]);
        assert!(quadratic_roots(1.0, 0.0, 1.0).is_empty());
    }

    #[test]
    fn quintic_roots() {
        // (t-1)(t+2)(t-3)(t^2+1)
        let c = [6.0, -5.0, 4.0, -4.0, -2.0, 1.0];
        let r = real_roots(&c);
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([-2.0, 1.0, 3.0]) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
    }
}
