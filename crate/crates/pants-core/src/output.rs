//! Text serialization: 17-significant-digit numbers, trajectory and
//! level-set CSV, and bare SVG polylines on log-log axes.

use std::fmt::Write as _;

/// Format with 17 significant digits in scientific notation, a valid JSON
/// number that round-trips every `f64` exactly.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// CSV with header `t,sigma1,tau1,f`.
pub fn trajectory_csv(samples: &[(f64, f64, f64, f64)]) -> String {
    let mut s = String::from("t,sigma1,tau1,f\n");
    for (t, a, b, f) in samples {
        let _ = writeln!(s, "{},{},{},{}", fmt17(*t), fmt17(*a), fmt17(*b), fmt17(*f));
    }
    s
}

/// CSV with header `sigma1,tau1`.
pub fn level_set_csv(points: &[(f64, f64)]) -> String {
    let mut s = String::from("sigma1,tau1\n");
    for (a, b) in points {
        let _ = writeln!(s, "{},{}", fmt17(*a), fmt17(*b));
    }
    s
}

/// An SVG document drawing each polyline in the (log σ₁, log τ₁) plane.
pub fn svg_polylines(curves: &[Vec<(f64, f64)>], marker: Option<(f64, f64)>) -> String {
    const W: f64 = 640.0;
    const M: f64 = 40.0;
    let logs: Vec<Vec<(f64, f64)>> = curves
        .iter()
        .map(|c| c.iter().map(|(a, b)| (a.ln(), b.ln())).collect())
        .collect();
    let mut all: Vec<(f64, f64)> = logs.iter().flatten().copied().collect();
    if let Some((a, b)) = marker {
        all.push((a.ln(), b.ln()));
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for (x, y) in &all {
        x0 = x0.min(*x);
        x1 = x1.max(*x);
        y0 = y0.min(*y);
        y1 = y1.max(*y);
    }
    if all.is_empty() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let map = |x: f64, y: f64| {
        (
            M + (x - x0) / span * (W - 2.0 * M),
            W - M - (y - y0) / span * (W - 2.0 * M),
        )
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{W}\" viewBox=\"0 0 {W} {W}\">"
    );
    let (ax, ay) = map(x0, y0);
    let _ = writeln!(
        s,
        "<polyline fill=\"none\" stroke=\"gray\" points=\"{ax:.3},{:.3} {ax:.3},{ay:.3} {:.3},{ay:.3}\"/>",
        M,
        W - M
    );
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"{:.1}\">log sigma1</text><text x=\"4\" y=\"{:.1}\">log tau1</text>",
        W / 2.0,
        W - 8.0,
        M - 8.0
    );
    for c in &logs {
        let pts: Vec<String> = c
            .iter()
            .map(|(x, y)| {
                let (px, py) = map(*x, *y);
                format!("{px:.3},{py:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            "<polyline fill=\"none\" stroke=\"black\" points=\"{}\"/>",
            pts.join(" ")
        );
    }
    if let Some((a, b)) = marker {
        let (px, py) = map(a.ln(), b.ln());
        let _ = writeln!(s, "<circle cx=\"{px:.3}\" cy=\"{py:.3}\" r=\"3\"/>");
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_roundtrip() {
        for x in [1.0, 0.1, -2.5e-300, 1.0 / 3.0, 123456789.12345679] {
            let s = fmt17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap().replace(['-', '.'], "");
            assert_eq!(mantissa.len(), 17);
        }
    }

    #[test]
    fn csv_headers() {
        assert_eq!(trajectory_csv(&[]), "t,sigma1,tau1,f\n");
        assert!(level_set_csv(&[(1.0, 2.0)]).starts_with("sigma1,tau1\n1.0000000000000000e0,"));
    }

    #[test]
    fn svg_is_wellformed() {
        let s = svg_polylines(&[vec![(1.0, 1.0), (2.0, 3.0), (0.5, 2.0)]], Some((1.0, 2.0)));
        assert!(s.starts_with("<svg"));
        assert!(s.trim_end().ends_with("</svg>"));
        assert_eq!(s.matches("<polyline").count(), 2);
    }
}
