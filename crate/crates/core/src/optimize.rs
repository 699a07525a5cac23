//! Derivative-free minimizers used by the deficit computations.

const INV_PHI: f64 = 0.618_033_988_749_894_9; // (sqrt(5) - 1) / 2

/// Golden-section search for a minimum of `f` on `[a, b]`, stopping once
/// the bracket is narrower than `tol`. Returns `(x, f(x))`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    [(c, fc), (d, fd)]
        .into_iter()
        .fold((x, fx), |best, cand| if cand.1 < best.1 { cand } else { best })
}

/// Global minimization on `[lo, hi]`: `n` equispaced samples locate the best
/// cell, then golden-section search refines inside the two neighbouring
/// cells. The grid minimum is kept if refinement does not improve on it.
pub fn grid_then_golden<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize, tol: f64) -> (f64, f64) {
    assert!(n >= 2, "grid needs at least two points");
    let h = (hi - lo) / (n - 1) as f64;
    let xs = |i: usize| if i == n - 1 { hi } else { lo + h * i as f64 };
    let (mut best_i, mut best_f) = (0, f(lo));
    for i in 1..n {
        let v = f(xs(i));
        if v < best_f {
            best_i = i;
            best_f = v;
        }
    }
    let a = xs(best_i.saturating_sub(1));
    let b = xs((best_i + 1).min(n - 1));
    let (x, fx) = golden_section(&f, a, b, tol);
    if fx < best_f {
        (x, fx)
    } else {
        (xs(best_i), best_f)
    }
}

/// Compass search in two dimensions: try `±step` along each axis, move to the
/// best strict improvement, otherwise shrink both steps by `shrink`. Stops
/// after `shrinks` contractions.
pub fn pattern_search_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    start: (f64, f64),
    step: (f64, f64),
    shrink: f64,
    shrinks: usize,
) -> ((f64, f64), f64) {
    let (mut x, mut y) = start;
    let (mut hx, mut hy) = step;
    let mut fx = f(x, y);
    let mut done = 0;
    // bounded number of accepted moves per step size
    let mut moves = 0;
    while done < shrinks {
        let mut best = None;
        for (dx, dy) in [(hx, 0.0), (-hx, 0.0), (0.0, hy), (0.0, -hy)] {
            let v = f(x + dx, y + dy);
            if v < best.map_or(fx, |(_, _, b)| b) {
                best = Some((x + dx, y + dy, v));
            }
        }
        match best {
            Some((nx, ny, v)) if moves < 1000 => {
                x = nx;
                y = ny;
                fx = v;
                moves += 1;
            }
            _ => {
                hx *= shrink;
                hy *= shrink;
                done += 1;
                moves = 0;
            }
        }
    }
    ((x, y), fx)
}
