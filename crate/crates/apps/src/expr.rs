//! Expressions built from sinusoids with min, max and linear combination.
//!
//! Such an expression is a sinusoid between consecutive switch points, and
//! every switch point is a root of the difference of two sinusoids it could
//! select, so it splits into exact sinusoidal pieces.

use quadrot_geom::Sinusoid;

#[derive(Clone, Debug)]
pub enum Expr {
    Atom(Sinusoid),
    Min(Vec<Expr>),
    Max(Vec<Expr>),
    Lin(Vec<(f64, Expr)>),
}

impl Expr {
    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Lin(vec![(1.0, a), (-1.0, b)])
    }

    pub fn scale(k: f64, a: Expr) -> Expr {
        Expr::Lin(vec![(k, a)])
    }

    pub fn half_sum(a: Expr, b: Expr) -> Expr {
        Expr::Lin(vec![(0.5, a), (0.5, b)])
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Expr::Atom(s) => s.eval(t),
            Expr::Min(v) => v.iter().map(|e| e.eval(t)).fold(f64::INFINITY, f64::min),
            Expr::Max(v) => v.iter().map(|e| e.eval(t)).fold(f64::NEG_INFINITY, f64::max),
            Expr::Lin(v) => v.iter().map(|(k, e)| k * e.eval(t)).sum(),
        }
    }

    /// The sinusoid selected at `t`.
    pub fn active(&self, t: f64) -> Sinusoid {
        match self {
            Expr::Atom(s) => *s,
            Expr::Min(v) => v.iter().min_by(|a, b| a.eval(t).total_cmp(&b.eval(t))).expect("empty min").active(t),
            Expr::Max(v) => v.iter().max_by(|a, b| a.eval(t).total_cmp(&b.eval(t))).expect("empty max").active(t),
            Expr::Lin(v) => v.iter().fold(Sinusoid::ZERO, |acc, (k, e)| acc + e.active(t) * *k),
        }
    }

    /// Every sinusoid the expression can reduce to.
    fn possible(&self) -> Vec<Sinusoid> {
        match self {
            Expr::Atom(s) => vec![*s],
            Expr::Min(v) | Expr::Max(v) => v.iter().flat_map(|e| e.possible()).collect(),
            Expr::Lin(v) => v.iter().fold(vec![Sinusoid::ZERO], |acc, (k, e)| {
                let p = e.possible();
                acc.iter().flat_map(|a| p.iter().map(move |s| *a + *s * *k)).collect()
            }),
        }
    }

    /// Differences whose sign decides some selection.
    fn switches(&self, out: &mut Vec<Sinusoid>) {
        match self {
            Expr::Atom(_) => {}
            Expr::Min(v) | Expr::Max(v) => {
                let ps: Vec<Vec<Sinusoid>> = v.iter().map(|e| e.possible()).collect();
                for i in 0..ps.len() {
                    for j in i + 1..ps.len() {
                        for a in &ps[i] {
                            for b in &ps[j] {
                                out.push(*a - *b);
                            }
                        }
                    }
                }
                v.iter().for_each(|e| e.switches(out));
            }
            Expr::Lin(v) => v.iter().for_each(|(_, e)| e.switches(out)),
        }
    }

    /// Candidate switch orientations inside `(lo, hi)`, sorted.
    pub fn breakpoints(&self, lo: f64, hi: f64, scale: f64) -> Vec<f64> {
        let mut sw = Vec::new();
        self.switches(&mut sw);
        let mut out: Vec<f64> = sw
            .into_iter()
            .filter(|s| s.amplitude() > 1e-13 * scale)
            .flat_map(|s| s.roots_in(lo, hi))
            .filter(|&t| t > lo && t < hi)
            .collect();
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }
}

/// Split `[lo, hi]` at the breakpoints of all `exprs` together.
pub fn joint_cells(exprs: &[&Expr], lo: f64, hi: f64, scale: f64) -> Vec<(f64, f64)> {
    let mut b: Vec<f64> = exprs.iter().flat_map(|e| e.breakpoints(lo, hi, scale)).collect();
    b.push(lo);
    b.push(hi);
    b.sort_by(f64::total_cmp);
    b.dedup();
    b.windows(2).filter(|w| w[1] > w[0]).map(|w| (w[0], w[1])).collect()
}

/// `(lo, hi, sinusoid)` pieces of `e` over `[lo, hi]`, merged where the
/// selected sinusoid does not change.
pub fn pieces(e: &Expr, lo: f64, hi: f64, scale: f64) -> Vec<(f64, f64, Sinusoid)> {
    let mut out: Vec<(f64, f64, Sinusoid)> = Vec::new();
    for (a, b) in joint_cells(&[e], lo, hi, scale) {
        let s = e.active((a + b) / 2.0);
        match out.last_mut() {
            Some(last) if last.2 == s => last.1 = b,
            _ => out.push((a, b, s)),
        }
    }
    out
}

/// Maximum of a sinusoid over `[a, b]` as `(argmax, value)`.
pub fn sinusoid_max(s: Sinusoid, a: f64, b: f64) -> (f64, f64) {
    let mut best = if s.eval(a) >= s.eval(b) { (a, s.eval(a)) } else { (b, s.eval(b)) };
    for t in s.deriv().roots_in(a, b) {
        let v = s.eval(t);
        if v > best.1 {
            best = (t, v);
        }
    }
    best
}

/// Maximum of `e` over `[lo, hi]`.
pub fn expr_max(e: &Expr, lo: f64, hi: f64, scale: f64) -> (f64, f64) {
    let mut best = (lo, f64::NEG_INFINITY);
    for (a, b, s) in pieces(e, lo, hi, scale) {
        let (t, _) = sinusoid_max(s, a, b);
        // the exact value, not the piece's, in case a switch was missed
        let v = e.eval(t);
        if v > best.1 {
            best = (t, v);
        }
    }
    best
}
