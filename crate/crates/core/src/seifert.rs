//! Seifert blocks of an elementary simple-ribbon fusion and their
//! determinants.
//!
//! A fusion with band signs `ε_1..ε_m` and attendant linking number `l`
//! contributes two `(m+|l|)`-square integer blocks `P` and `Q` to the Seifert
//! matrix of the fused knot.  The Alexander polynomial picks up the factors
//! `|P - tQᵀ|` and `|Q - tPᵀ|`, which have the closed forms
//!
//! ```text
//! |P - tQᵀ| = c^|l| Π(-c_i) + (-1)^(|l|+m+1) d^|l| Π e_i
//! |Q - tPᵀ| = d^|l| Π(-d_i) + (-1)^(|l|+m+1) c^|l| Π e_i
//! ```
//!
//! with `c = a - tb`, `d = b - ta`, `e = ε(1 - t)`, `a = (ε+1)/2`,
//! `b = (ε-1)/2` and likewise for the indexed versions.

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, NormalForm};
use crate::srpoly::SRParams;

pub type IntMatrix = Vec<Vec<i64>>;
pub type PolyMatrix = Vec<Vec<LaurentPoly>>;

/// Band signs of one elementary fusion together with its linking number.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FusionSigns {
    eps: Vec<i8>,
    l: i64,
}

impl FusionSigns {
    pub fn new(eps: Vec<i8>, l: i64) -> Result<Self> {
        if eps.is_empty() {
            return Err(Error::InvalidSigns("at least one band is required".into()));
        }
        if let Some(bad) = eps.iter().find(|&&e| e != 1 && e != -1) {
            return Err(Error::InvalidSigns(format!("sign {bad} is not +1 or -1")));
        }
        Ok(Self { eps, l })
    }

    /// The sign pattern with the first `p` bands positive.
    pub fn canonical(params: SRParams) -> Self {
        let m = params.m() as usize;
        let p = params.p() as usize;
        let eps = (0..m).map(|i| if i < p { 1 } else { -1 }).collect();
        Self { eps, l: params.l() }
    }

    /// Parses a comma-separated list such as `+1,-1,1`.
    pub fn parse_eps(text: &str) -> Result<Vec<i8>> {
        text.split(',')
            .map(|s| {
                let s = s.trim();
                match s {
                    "+1" | "1" | "+" => Ok(1),
                    "-1" | "-" => Ok(-1),
                    _ => Err(Error::InvalidSigns(format!("cannot read band sign `{s}`"))),
                }
            })
            .collect()
    }

    pub fn eps(&self) -> &[i8] {
        &self.eps
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn m(&self) -> u32 {
        self.eps.len() as u32
    }

    /// Number of positive bands.
    pub fn p(&self) -> u32 {
        self.eps.iter().filter(|&&e| e == 1).count() as u32
    }

    /// Sign of `l`; `+1` when `l = 0`, where it never enters a formula.
    pub fn epsilon(&self) -> i8 {
        if self.l < 0 {
            -1
        } else {
            1
        }
    }

    fn abs_l(&self) -> usize {
        self.l.unsigned_abs() as usize
    }

    pub fn params(&self) -> SRParams {
        SRParams::new(self.m(), self.l, self.p()).expect("p <= m by construction")
    }
}

/// The quantities `a, b, c, d, e` attached to a sign.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignValues {
    pub a: i64,
    pub b: i64,
    pub c: LaurentPoly,
    pub d: LaurentPoly,
    pub e: LaurentPoly,
}

impl SignValues {
    /// From the defining formulas.
    pub fn from_sign(eps: i8) -> Self {
        let eps = eps as i64;
        let a = (eps + 1) / 2;
        let b = (eps - 1) / 2;
        let t = LaurentPoly::t();
        Self {
            a,
            b,
            c: LaurentPoly::constant(a) - t.scale(&b.into()),
            d: LaurentPoly::constant(b) - t.scale(&a.into()),
            e: LaurentPoly::from_terms([(0, eps), (1, -eps)]),
        }
    }

    /// From the tabulated values
    /// `ε = 1: (1, 0, 1, -t, 1-t)` and `ε = -1: (0, -1, t, -1, -(1-t))`.
    pub fn tabulated(eps: i8) -> Self {
        let poly = |s: &str| s.parse::<LaurentPoly>().expect("table literal");
        if eps > 0 {
            Self {
                a: 1,
                b: 0,
                c: poly("1"),
                d: poly("-t"),
                e: poly("1 - t"),
            }
        } else {
            Self {
                a: 0,
                b: -1,
                c: poly("t"),
                d: poly("-1"),
                e: poly("-1 + t"),
            }
        }
    }
}

/// The blocks `P = [[P1, P2], [P3, P4]]` and `Q = [[Q1, Q2], [Q3, Q4]]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeifertBlocks {
    pub p: IntMatrix,
    pub q: IntMatrix,
}

impl SeifertBlocks {
    pub fn size(&self) -> usize {
        self.p.len()
    }
}

/// Populates `P` and `Q`.  When `m = 1` the diagonal entry and the corner
/// entry of `P1` (and `Q1`) coincide; both contributions are summed.
pub fn build_blocks(signs: &FusionSigns) -> SeifertBlocks {
    let m = signs.eps.len();
    let ll = signs.abs_l();
    let n = m + ll;
    let eps = |i: usize| signs.eps[i] as i64;
    let big_eps = signs.epsilon() as i64;
    let (a, b) = ((big_eps + 1) / 2, (big_eps - 1) / 2);
    let mut p = vec![vec![0i64; n]; n];
    let mut q = vec![vec![0i64; n]; n];

    for i in 0..m {
        p[i][i] -= (eps(i) + 1) / 2;
        q[i][i] -= (eps(i) - 1) / 2;
    }
    p[0][m - 1] += eps(0);
    q[m - 1][0] += eps(0);
    for i in 1..m {
        p[i][i - 1] += eps(i);
        q[i - 1][i] += eps(i);
    }

    if ll > 0 {
        p[0][n - 1] = eps(0);
        q[n - 1][0] = eps(0);
        for i in 0..ll {
            p[m + i][m - 1] = big_eps;
            q[m - 1][m + i] = big_eps;
            p[m + i][m + i] = a;
            q[m + i][m + i] = b;
        }
        for i in 1..ll {
            p[m + i][m + i - 1] = b;
            q[m + i - 1][m + i] = a;
        }
    }
    SeifertBlocks { p, q }
}

/// `X - t Yᵀ` for integer matrices of equal square shape.
pub fn minus_t_transpose(x: &IntMatrix, y: &IntMatrix) -> PolyMatrix {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| LaurentPoly::from_terms([(0, x[i][j]), (1, -y[j][i])]))
                .collect()
        })
        .collect()
}

fn check_square<T>(a: &[Vec<T>]) -> Result<usize> {
    let n = a.len();
    match a.iter().find(|row| row.len() != n) {
        Some(row) => Err(Error::NotSquare {
            rows: n,
            cols: row.len(),
        }),
        None => Ok(n),
    }
}

/// Exact determinant over the Laurent ring.  Matrices up to 4x4 use cofactor
/// expansion; larger ones use fraction-free (Bareiss) elimination.
pub fn symbolic_det(a: &[Vec<LaurentPoly>]) -> Result<LaurentPoly> {
    let n = check_square(a)?;
    if n <= 4 {
        return cofactor_det(a);
    }
    Ok(bareiss_det(a.to_vec()))
}

/// Laplace expansion along the first row.
pub fn cofactor_det(a: &[Vec<LaurentPoly>]) -> Result<LaurentPoly> {
    check_square(a)?;
    let cols: Vec<usize> = (0..a.len()).collect();
    Ok(laplace(a, 0, &cols))
}

fn laplace(a: &[Vec<LaurentPoly>], row: usize, cols: &[usize]) -> LaurentPoly {
    if cols.is_empty() {
        return LaurentPoly::one();
    }
    let mut acc = LaurentPoly::zero();
    for (k, &c) in cols.iter().enumerate() {
        let entry = &a[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &laplace(a, row + 1, &rest);
        acc = if k % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Fraction-free elimination.  Each step's pivot is the nonzero candidate of
/// smallest span (then fewest terms) to limit intermediate growth; every
/// division is exact in `Z[t, t^-1]`.
pub fn bareiss_det(mut a: PolyMatrix) -> LaurentPoly {
    let n = a.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| (a[i][k].span(), a[i][k].num_terms(), i));
        let Some(pr) = pivot else {
            return LaurentPoly::zero();
        };
        if pr != k {
            a.swap(pr, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num
                    .divide_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
            a[i][k] = LaurentPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

pub fn det_p_minus_tqt(signs: &FusionSigns) -> LaurentPoly {
    let blocks = build_blocks(signs);
    symbolic_det(&minus_t_transpose(&blocks.p, &blocks.q)).expect("square blocks")
}

pub fn det_q_minus_tpt(signs: &FusionSigns) -> LaurentPoly {
    let blocks = build_blocks(signs);
    symbolic_det(&minus_t_transpose(&blocks.q, &blocks.p)).expect("square blocks")
}

fn closed_form(signs: &FusionSigns, for_p: bool) -> LaurentPoly {
    let big = SignValues::tabulated(signs.epsilon());
    let ll = signs.abs_l() as u32;
    let m = signs.eps.len();
    let (lead, other) = if for_p {
        (&big.c, &big.d)
    } else {
        (&big.d, &big.c)
    };
    let mut first = lead.pow(ll);
    let mut second = other.pow(ll);
    for &e in &signs.eps {
        let v = SignValues::tabulated(e);
        let diag = if for_p { &v.c } else { &v.d };
        first = &first * &(-diag);
        second = &second * &v.e;
    }
    if (ll as usize + m + 1) % 2 == 1 {
        second = -second;
    }
    first + second
}

/// Closed form of `|P - tQᵀ|`.
pub fn closed_form_p(signs: &FusionSigns) -> LaurentPoly {
    closed_form(signs, true)
}

/// Closed form of `|Q - tPᵀ|`.
pub fn closed_form_q(signs: &FusionSigns) -> LaurentPoly {
    closed_form(signs, false)
}

fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The two determinants specialised to the cases `l >= 0` and `l < 0`:
///
/// ```text
/// l >= 0:  |P - tQᵀ| = (-1)^(1-p)   { t^l (1-t)^m - (-t)^(m-p) }
///          |Q - tPᵀ| = (-1)^(l+1-p) { (1-t)^m - t^l (-t)^p }
/// l <  0:  |P - tQᵀ| = (-1)^(1-p)    { (1-t)^m - t^-l (-t)^(m-p) }
///          |Q - tPᵀ| = (-1)^(-l+1-p) { t^-l (1-t)^m - (-t)^p }
/// ```
pub fn case_formulas(params: SRParams) -> (LaurentPoly, LaurentPoly) {
    let m = params.m() as i64;
    let l = params.l();
    let p = params.p() as i64;
    let one_minus_t = LaurentPoly::from_terms([(0, 1), (1, -1)]).pow(params.m());
    let neg_t_pow = |k: i64| LaurentPoly::monomial(sign_pow(k), k);
    let mono = |k: i64| LaurentPoly::monomial(1, k);
    if l >= 0 {
        let dp = (&mono(l) * &one_minus_t - neg_t_pow(m - p)).scale(&sign_pow(1 - p).into());
        let dq = (&one_minus_t - &mono(l) * &neg_t_pow(p)).scale(&sign_pow(l + 1 - p).into());
        (dp, dq)
    } else {
        let dp = (&one_minus_t - &mono(-l) * &neg_t_pow(m - p)).scale(&sign_pow(1 - p).into());
        let dq = (&mono(-l) * &one_minus_t - neg_t_pow(p)).scale(&sign_pow(-l + 1 - p).into());
        (dp, dq)
    }
}

/// `Δ_k · |P - tQᵀ| · |Q - tPᵀ|` in normal form.
pub fn alexander_from_fusion(base: &LaurentPoly, signs: &FusionSigns) -> Result<NormalForm> {
    if base.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    (base * &det_p_minus_tqt(signs) * det_q_minus_tpt(signs)).normalize()
}

/// Entries of the fused Seifert matrix that the block layout leaves free.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Fillers {
    /// `(m+|l|) x (m+|l|)`, middle block.
    pub middle: IntMatrix,
    /// `(m+|l|) x r`, right of the middle block.
    pub right: IntMatrix,
    /// `r x (m+|l|)`, left of the genus part.
    pub bottom: IntMatrix,
}

impl Fillers {
    pub fn zeros(n: usize, r: usize) -> Self {
        Self {
            middle: vec![vec![0; n]; n],
            right: vec![vec![0; r]; n],
            bottom: vec![vec![0; n]; r],
        }
    }
}

/// A square integer Seifert matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeifertMatrix {
    rows: IntMatrix,
}

impl SeifertMatrix {
    pub fn new(rows: IntMatrix) -> Result<Self> {
        check_square(&rows)?;
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &IntMatrix {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Lays out
    ///
    /// ```text
    /// | O  P  O  |
    /// | Q  *  *  |
    /// | O  *  M' |
    /// ```
    ///
    /// from fusion blocks, the Seifert matrix `M'` of the base knot and the
    /// free `*` entries.
    pub fn assemble(
        blocks: &SeifertBlocks,
        base: &SeifertMatrix,
        fillers: &Fillers,
    ) -> Result<Self> {
        let n = blocks.size();
        let r = base.size();
        let shape_ok = fillers.middle.len() == n
            && fillers.middle.iter().all(|row| row.len() == n)
            && fillers.right.len() == n
            && fillers.right.iter().all(|row| row.len() == r)
            && fillers.bottom.len() == r
            && fillers.bottom.iter().all(|row| row.len() == n);
        if !shape_ok {
            return Err(Error::InvalidArgument(format!(
                "filler blocks do not match block size {n} and base size {r}"
            )));
        }
        let size = 2 * n + r;
        let mut rows = vec![vec![0i64; size]; size];
        for i in 0..n {
            for j in 0..n {
                rows[i][n + j] = blocks.p[i][j];
                rows[n + i][j] = blocks.q[i][j];
                rows[n + i][n + j] = fillers.middle[i][j];
            }
            for j in 0..r {
                rows[n + i][2 * n + j] = fillers.right[i][j];
            }
        }
        for i in 0..r {
            for j in 0..n {
                rows[2 * n + i][n + j] = fillers.bottom[i][j];
            }
            for j in 0..r {
                rows[2 * n + i][2 * n + j] = base.rows[i][j];
            }
        }
        Ok(Self { rows })
    }

    /// `det(M - tMᵀ)` without normalisation.
    pub fn alexander_det(&self) -> LaurentPoly {
        symbolic_det(&minus_t_transpose(&self.rows, &self.rows)).expect("square")
    }
}

/// `Δ ≐ det(M - tMᵀ)` in normal form; the empty matrix gives `1`.
pub fn alexander_from_seifert(m: &SeifertMatrix) -> Result<NormalForm> {
    m.alexander_det().normalize()
}

/// Parses `rows separated by ';', entries by ','`, each entry a polynomial.
pub fn parse_poly_matrix(text: &str) -> Result<PolyMatrix> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|row| row.split(',').map(LaurentPoly::parse).collect())
        .collect()
}

/// Integer matrices in the same text format.
pub fn parse_int_matrix(text: &str) -> Result<IntMatrix> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|e| Error::InvalidArgument(format!("matrix entry `{x}`: {e}")))
                })
                .collect()
        })
        .collect()
}
