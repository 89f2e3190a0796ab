//! Chi-square survival function via the regularized incomplete gamma
//! function (series expansion below a+1, continued fraction above).

/// P(X >= x) for a chi-square variable with `dof` degrees of freedom.
pub fn chi_square_sf(x: f64, dof: u64) -> f64 {
    assert!(dof >= 1);
    if x <= 0.0 {
        return 1.0;
    }
    upper_regularized_gamma(dof as f64 / 2.0, x / 2.0)
}

fn upper_regularized_gamma(a: f64, x: f64) -> f64 {
    if x < a + 1.0 {
        1.0 - lower_series(a, x)
    } else {
        upper_continued_fraction(a, x)
    }
}

fn lower_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut del = sum;
    for _ in 0..500 {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * 1e-16 {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

fn upper_continued_fraction(a: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma(a)).exp() * h
}

// Lanczos approximation, g = 7, 9 coefficients.
fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 8] = [
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        // Reflection.
        return (std::f64::consts::PI / (std::f64::consts::PI * x).sin()).ln()
            - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = 0.99999999999980993;
    for (i, &c) in COEF.iter().enumerate() {
        acc += c / (x + i as f64 + 1.0);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_function_reference_points() {
        assert!((ln_gamma(1.0)).abs() < 1e-12);
        assert!((ln_gamma(5.0) - 24f64.ln()).abs() < 1e-12);
        assert!((ln_gamma(0.5) - std::f64::consts::PI.sqrt().ln()).abs() < 1e-12);
    }

    #[test]
    fn chi_square_reference_points() {
        // Reference values computed independently (scipy.stats.chi2.sf).
        let cases = [
            (1.0, 1, 0.31731050786291115),
            (3.84, 1, 0.05004352124870519),
            (10.0, 10, 0.44049328506521257),
            (49.0, 49, 0.4731282956547652),
            (85.0, 49, 0.001086315940047132),
            (20.0, 30, 0.9165415270653372),
        ];
        for (x, dof, expected) in cases {
            let got = chi_square_sf(x, dof);
            assert!(
                (got - expected).abs() < 1e-10,
                "sf({x}, {dof}) = {got}, want {expected}"
            );
        }
    }
}
