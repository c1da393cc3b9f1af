//! Golden-section search on a closed interval.

/// 1/φ, the fraction of the bracket kept per iteration.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub arg: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Minimizes a unimodal `f` over the closed interval `[lo, hi]` to an
/// argument tolerance `tol`. Both endpoints are evaluated as well, so a
/// minimum sitting exactly on the boundary is returned as such.
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Minimum {
    assert!(lo <= hi, "empty bracket [{lo}, {hi}]");
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut evaluations = 2;
    while (b - a).abs() > tol {
        if fc < fd {
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
        evaluations += 1;
    }
    let mut best = if fc < fd {
        Minimum {
            arg: c,
            value: fc,
            evaluations,
        }
    } else {
        Minimum {
            arg: d,
            value: fd,
            evaluations,
        }
    };
    for edge in [lo, hi] {
        let fe = f(edge);
        best.evaluations += 1;
        if fe < best.value {
            best.arg = edge;
            best.value = fe;
        }
    }
    best
}
