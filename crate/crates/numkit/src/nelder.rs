/// Nelder-Mead simplex minimization in two dimensions. Returns the best
/// vertex after `max_iter` iterations or once the simplex collapses below
/// `tol` in both function spread and diameter.
pub fn nelder_mead_2d<F: FnMut(f64, f64) -> f64>(
    mut f: F,
    start: (f64, f64),
    scale: f64,
    tol: f64,
    max_iter: usize,
) -> ((f64, f64), f64) {
    let mut pts = [
        start,
        (start.0 + scale, start.1),
        (start.0, start.1 + scale),
    ];
    let mut vals = [f(pts[0].0, pts[0].1), f(pts[1].0, pts[1].1), f(pts[2].0, pts[2].1)];

    for _ in 0..max_iter {
        // ascending by value: pts[order[0]] best
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());
        let (b, m, w) = (order[0], order[1], order[2]);

        let spread = (vals[w] - vals[b]).abs();
        let diam = {
            let d1 = ((pts[b].0 - pts[w].0).powi(2) + (pts[b].1 - pts[w].1).powi(2)).sqrt();
            let d2 = ((pts[b].0 - pts[m].0).powi(2) + (pts[b].1 - pts[m].1).powi(2)).sqrt();
            d1.max(d2)
        };
        if spread < tol && diam < tol {
            break;
        }

        let centroid = (
            0.5 * (pts[b].0 + pts[m].0),
            0.5 * (pts[b].1 + pts[m].1),
        );
        let refl = (
            centroid.0 + (centroid.0 - pts[w].0),
            centroid.1 + (centroid.1 - pts[w].1),
        );
        let fr = f(refl.0, refl.1);

        if fr < vals[b] {
            // try expansion
            let exp = (
                centroid.0 + 2.0 * (centroid.0 - pts[w].0),
                centroid.1 + 2.0 * (centroid.1 - pts[w].1),
            );
            let fe = f(exp.0, exp.1);
            if fe < fr {
                pts[w] = exp;
                vals[w] = fe;
            } else {
                pts[w] = refl;
                vals[w] = fr;
            }
        } else if fr < vals[m] {
            pts[w] = refl;
            vals[w] = fr;
        } else {
            // contraction toward the better side
            let toward = if fr < vals[w] { refl } else { pts[w] };
            let con = (
                centroid.0 + 0.5 * (toward.0 - centroid.0),
                centroid.1 + 0.5 * (toward.1 - centroid.1),
            );
            let fc = f(con.0, con.1);
            if fc < vals[w].min(fr) {
                pts[w] = con;
                vals[w] = fc;
            } else {
                // shrink toward best
                for i in 0..3 {
                    if i == b {
                        continue;
                    }
                    pts[i] = (
                        pts[b].0 + 0.5 * (pts[i].0 - pts[b].0),
                        pts[b].1 + 0.5 * (pts[i].1 - pts[b].1),
                    );
                    vals[i] = f(pts[i].0, pts[i].1);
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..3 {
        if vals[i] < vals[best] {
            best = i;
        }
    }
    (pts[best], vals[best])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let ((x, y), v) = nelder_mead_2d(
            |x, y| (x - 1.0).powi(2) + 2.0 * (y + 0.5).powi(2),
            (4.0, 4.0),
            1.0,
            1e-12,
            500,
        );
        assert!((x - 1.0).abs() < 1e-5);
        assert!((y + 0.5).abs() < 1e-5);
        assert!(v < 1e-9);
    }

    #[test]
    fn rosenbrock_moves_toward_minimum() {
        let ((x, y), _) = nelder_mead_2d(
            |x, y| (1.0 - x).powi(2) + 100.0 * (y - x * x).powi(2),
            (-1.2, 1.0),
            0.5,
            1e-14,
            4000,
        );
        assert!((x - 1.0).abs() < 1e-3);
        assert!((y - 1.0).abs() < 1e-3);
    }
}
