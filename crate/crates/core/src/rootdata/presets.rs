//! Named root data.
//!
//! Adjoint presets use the fundamental coweights as the basis of `Λ` (and the
//! simple roots as the basis of `V`); simply connected presets use the simple
//! coroots. `GL_r` uses the diagonal-exponent lattice `Z^r` on both sides.

use super::{LabelScheme, RootDatum};
use crate::latcone::linalg;
use crate::rational::{q, qvec, QVec};
use crate::Error;

const NAMES: &[&str] = &[
    "A1-adjoint", "A1-sc", "A2-adjoint", "A2-sc", "A3-adjoint", "A3-sc", "B2-adjoint", "B2-sc",
    "B3-adjoint", "B3-sc", "C3-adjoint", "C3-sc", "G2", "GL1", "GL2", "GL3", "GL4",
];

/// Canonical preset names (aliases such as `PGL3` or `SL2` are accepted too).
pub fn preset_names() -> &'static [&'static str] {
    NAMES
}

fn cartan_a(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// `C[i][j] = ⟨α_i, α_j^∨⟩`, Bourbaki numbering.
fn cartan(kind: char, n: usize) -> Vec<Vec<i64>> {
    let mut c = cartan_a(n);
    match kind {
        'A' => {}
        'B' => c[n - 2][n - 1] = -2,
        'C' => c[n - 1][n - 2] = -2,
        'G' => c = vec![vec![2, -1], vec![-3, 2]],
        _ => unreachable!(),
    }
    c
}

fn q_matrix(m: &[Vec<i64>]) -> Vec<QVec> {
    m.iter().map(|r| qvec(r)).collect()
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Adjoint form: `Λ` has the fundamental coweights as basis.
pub fn adjoint(name: &str, c: &[Vec<i64>], scheme: LabelScheme) -> Result<RootDatum, Error> {
    let n = c.len();
    let roots: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| i64::from(k == i)).collect()).collect();
    let coroots: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| c[i][j]).collect()).collect();
    let inv = linalg::inverse(&q_matrix(c)).expect("Cartan matrices are invertible");
    let coweights = roots.iter().map(|r| qvec(r)).collect();
    RootDatum::new(name, n, labels("alpha", n), roots, coroots, inv, coweights, vec![], scheme)
}

/// Simply connected form: `Λ` has the simple coroots as basis.
pub fn simply_connected(name: &str, c: &[Vec<i64>]) -> Result<RootDatum, Error> {
    let n = c.len();
    let roots = c.to_vec();
    let coroots: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| i64::from(k == i)).collect()).collect();
    let weights = coroots.iter().map(|r| qvec(r)).collect();
    let inv_t = linalg::inverse(&linalg::transpose(&q_matrix(c))).expect("Cartan matrices are invertible");
    RootDatum::new(name, n, labels("varpi", n), roots, coroots, weights, inv_t, vec![], LabelScheme::None)
}

/// `GL_r` with `α_i = α_i^∨ = e_i - e_{i+1}`.
pub fn gl(r: usize) -> Result<RootDatum, Error> {
    if r == 0 {
        return Err(Error::InvalidRootDatum("GL_0 has rank zero".into()));
    }
    let e = |i: usize| (0..r).map(|k| i64::from(k == i)).collect::<Vec<i64>>();
    let roots: Vec<Vec<i64>> = (0..r - 1)
        .map(|i| e(i).iter().zip(e(i + 1)).map(|(a, b)| a - b).collect())
        .collect();
    let fundamentals: Vec<QVec> = (0..r - 1)
        .map(|i| (0..r).map(|k| q(i64::from(k <= i))).collect())
        .collect();
    RootDatum::new(
        format!("GL{r}"),
        r,
        labels("e", r),
        roots.clone(),
        roots,
        fundamentals.clone(),
        fundamentals,
        vec![vec![q(1); r]],
        LabelScheme::Gl,
    )
}

/// `PGL_n`, i.e. adjoint `A_{n-1}`.
pub fn pgl(n: usize) -> Result<RootDatum, Error> {
    if n < 2 {
        return Err(Error::InvalidRootDatum("PGL_n needs n >= 2".into()));
    }
    adjoint(&format!("A{}-adjoint", n - 1), &cartan_a(n - 1), LabelScheme::Pgl)
}

/// `SL_n`, i.e. simply connected `A_{n-1}`.
pub fn sl(n: usize) -> Result<RootDatum, Error> {
    if n < 2 {
        return Err(Error::InvalidRootDatum("SL_n needs n >= 2".into()));
    }
    simply_connected(&format!("A{}-sc", n - 1), &cartan_a(n - 1))
}

/// Looks up a preset by name; case-insensitive, with `PGLn`, `SLn` aliases.
pub fn preset(name: &str) -> Result<RootDatum, Error> {
    let key = name.trim().to_ascii_uppercase();
    let unknown = || Error::UnknownPreset(name.to_string());
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    if let Some(rest) = key.strip_prefix("PGL") {
        return pgl(num(rest)?);
    }
    if let Some(rest) = key.strip_prefix("SL") {
        return sl(num(rest)?);
    }
    if let Some(rest) = key.strip_prefix("GL") {
        return gl(num(rest)?);
    }
    let (series, form) = match key.split_once('-') {
        Some((s, f)) => (s.to_string(), f.to_string()),
        None if key == "G2" => ("G2".into(), "ADJOINT".into()),
        None => return Err(unknown()),
    };
    let mut chars = series.chars();
    let kind = chars.next().ok_or_else(unknown)?;
    let n = num(chars.as_str())?;
    let ok = match kind {
        'A' => (1..=7).contains(&n),
        'B' | 'C' => (2..=4).contains(&n),
        'G' => n == 2,
        _ => false,
    };
    if !ok {
        return Err(unknown());
    }
    let c = cartan(kind, n);
    let canonical = if kind == 'G' { "G2".to_string() } else { format!("{kind}{n}-{}", form.to_ascii_lowercase()) };
    match form.as_str() {
        "ADJOINT" if kind == 'A' => adjoint(&canonical, &c, LabelScheme::Pgl),
        "ADJOINT" => adjoint(&canonical, &c, LabelScheme::None),
        "SC" if kind == 'G' => adjoint("G2", &c, LabelScheme::None),
        "SC" => simply_connected(&canonical, &c),
        _ => Err(unknown()),
    }
}
