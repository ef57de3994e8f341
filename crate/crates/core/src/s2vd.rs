//! The S2VD virus-competition cellular automaton over `F_4` and its
//! verification formulas.
//!
//! Colors are encoded as field elements: `0` green, `1` red, `w` white and
//! `w + 1` yellow, where `w^2 = w + 1`. A cell's next state is
//! `F_x = f_x * g_x` with the neighborhood dynamics `f_x` over six neighbors
//! and the controller `g_x = prod (1 - y_i)^3`, which switches a cell off as
//! soon as one of the controlled cells is red.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};
use crate::logic::Formula;
use crate::poly::{PolyError, Polynomial, Reducer, Ring};
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum S2vdError {
    #[error("expected {expected} variables, got {got}")]
    Arity { expected: String, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Number of cells the controller of a verification formula ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Neighborhood {
    /// The six direct neighbors only.
    Six,
    /// The full 18-cell neighborhood.
    Eighteen,
}

impl Neighborhood {
    pub fn cells(self) -> usize {
        match self {
            Neighborhood::Six => 6,
            Neighborhood::Eighteen => 18,
        }
    }
}

/// `F_4` with modulus `w^2 + w + 1`.
pub fn field() -> FieldSpec {
    FieldSpec::of_order(4).expect("F_4 exists")
}

pub fn green(f: &FieldSpec) -> FieldElement {
    f.zero()
}

pub fn red(f: &FieldSpec) -> FieldElement {
    f.one()
}

pub fn white(f: &FieldSpec) -> FieldElement {
    f.generator()
}

pub fn yellow(f: &FieldSpec) -> FieldElement {
    f.generator().pow(2)
}

/// Names `y1 .. yk`.
pub fn cell_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("y{i}")).collect()
}

fn white_term(f: &FieldSpec) -> Term {
    Term::Const(white(f))
}

/// The dynamics in terms of the neighbor sums, before expansion.
fn dynamics_term(f: &FieldSpec, ys: &[String]) -> Term {
    let gamma1 = Term::sum(ys.iter().map(|y| Term::var(y)).collect());
    let mut pairs = Vec::new();
    for i in 0..ys.len() {
        for j in i + 1..ys.len() {
            pairs.push(Term::product(vec![Term::var(&ys[i]), Term::var(&ys[j])]));
        }
    }
    let gamma2 = Term::sum(pairs);
    let cube = |t: &Term| Term::power(t.clone(), 3);
    Term::sum(vec![
        Term::power(gamma2.clone(), 2),
        Term::product(vec![gamma2, cube(&gamma1)]),
        Term::product(vec![
            Term::Const(white(f).pow(2)),
            Term::sum(vec![cube(&gamma1), Term::power(gamma1.clone(), 2), gamma1]),
        ]),
    ])
}

/// `f_x = g2^2 + g2*g1^3 + w^2*(g1^3 + g1^2 + g1)` with `g1` the sum of the
/// neighbors and `g2` the sum of their pairwise products, expanded and
/// reduced modulo the field polynomials.
pub fn dynamics_fx<S: AsRef<str>>(neighbors: &[S]) -> Result<Polynomial, S2vdError> {
    if neighbors.len() != 6 {
        return Err(S2vdError::Arity { expected: "6".into(), got: neighbors.len() });
    }
    let f = field();
    let ys: Vec<String> = neighbors.iter().map(|s| s.as_ref().to_string()).collect();
    let ring = Ring::lex(&f, &ys)?;
    Ok(dynamics_term(&f, &ys).expand(&Reducer::new(&ring))?)
}

/// The controller `prod (1 - y_i)^3`, kept factored.
pub fn controller_gx<S: AsRef<str>>(cells: &[S]) -> Result<Term, S2vdError> {
    if cells.len() != 6 && cells.len() != 18 {
        return Err(S2vdError::Arity { expected: "6 or 18".into(), got: cells.len() });
    }
    let f = field();
    let product =
        Term::product(cells.iter().map(|y| Term::difference(Term::int(&f, 1), Term::var(y.as_ref()))).collect());
    Ok(Term::power(product, 3))
}

/// `F_x = f_x(y1..y6) * g_x(y1..yk)`.
pub fn next_state(cells: Neighborhood) -> Term {
    let ys = cell_names(cells.cells());
    let fx = dynamics_fx(&ys[..6]).expect("six neighbors");
    let gx = controller_gx(&ys).expect("valid arity");
    Term::product(vec![Term::from_polynomial(&fx), gx])
}

fn atom_eq(lhs: Term, rhs: Term) -> Formula {
    Formula::eq(lhs, rhs)
}

/// `y*(y - w) = 0`: the cell is green or white.
fn safe_cell(f: &FieldSpec, y: &str) -> Formula {
    atom_eq(Term::product(vec![Term::var(y), Term::difference(Term::var(y), white_term(f))]), Term::int(f, 0))
}

/// `y*(y - w)*(y - (w + 1)) = 0`: the cell is not red.
fn non_red_cell(f: &FieldSpec, y: &str) -> Formula {
    atom_eq(
        Term::product(vec![
            Term::var(y),
            Term::difference(Term::var(y), white_term(f)),
            Term::difference(Term::var(y), Term::Const(yellow(f))),
        ]),
        Term::int(f, 0),
    )
}

fn next_state_equation(cells: Neighborhood) -> Formula {
    atom_eq(Term::var("x"), next_state(cells))
}

/// `exists y. (y2 = w /\ y3 = w /\ y8..y12 = w /\ Safe(y) /\ x = F_x(y))`
/// with `Safe` restricting `y1, y4, y7, y13` to green or white. With six
/// cells only the constraints on `y1 .. y6` are kept.
pub fn build_phi1_with(cells: Neighborhood) -> Formula {
    let f = field();
    let ys = cell_names(cells.cells());
    let present = |i: usize| i <= ys.len();
    let mut white_cells: Vec<usize> = (8..=12).collect();
    white_cells.extend([2, 3]);
    let mut parts: Vec<Formula> = white_cells
        .into_iter()
        .filter(|&i| present(i))
        .map(|i| atom_eq(Term::var(&format!("y{i}")), white_term(&f)))
        .collect();
    parts.extend([1, 4, 7, 13].into_iter().filter(|&i| present(i)).map(|i| safe_cell(&f, &format!("y{i}"))));
    parts.push(next_state_equation(cells));
    Formula::exists(&ys, Formula::And(parts))
}

/// `exists y. (/\ non_red(y_i) /\ x = F_x(y))`.
pub fn build_phi2_with(cells: Neighborhood) -> Formula {
    let f = field();
    let ys = cell_names(cells.cells());
    let mut parts: Vec<Formula> = ys.iter().map(|y| non_red_cell(&f, y)).collect();
    parts.push(next_state_equation(cells));
    Formula::exists(&ys, Formula::And(parts))
}

pub fn build_phi1() -> Formula {
    build_phi1_with(Neighborhood::Eighteen)
}

pub fn build_phi2() -> Formula {
    build_phi2_with(Neighborhood::Eighteen)
}

/// `exists y1..y6 x. (x = 1 /\ /\ non_red(y_i) /\ x = F_x(y))` with `F_x`
/// built from `cells` controller factors.
pub fn build_phi3_with(cells: Neighborhood) -> Formula {
    let f = field();
    let ys = cell_names(cells.cells());
    let mut parts = vec![atom_eq(Term::var("x"), Term::int(&f, 1))];
    parts.extend(ys[..6].iter().map(|y| non_red_cell(&f, y)));
    if cells == Neighborhood::Eighteen {
        parts.extend(ys[6..].iter().map(|y| atom_eq(Term::var(y), white_term(&f))));
    }
    parts.push(next_state_equation(cells));
    let mut bound = ys;
    bound.push("x".into());
    Formula::exists(&bound, Formula::And(parts))
}

pub fn build_phi3() -> Formula {
    build_phi3_with(Neighborhood::Six)
}

/// `forall x. (phi1 -> x*(x - w) = 0)`: every reachable state is safe.
pub fn phi1_check_with(cells: Neighborhood) -> Formula {
    let f = field();
    let safe_x = safe_cell(&f, "x");
    Formula::forall(&["x"], Formula::implies(build_phi1_with(cells), safe_x))
}

/// `forall x. (phi2 -> x != 1)`: a cell with no red cell around stays non-red.
pub fn phi2_check_with(cells: Neighborhood) -> Formula {
    let f = field();
    let not_red = Formula::neq(Term::var("x"), Term::int(&f, 1));
    Formula::forall(&["x"], Formula::implies(build_phi2_with(cells), not_red))
}

/// The witness neighborhood `(w, w, w, 0, 0, 0)` with `x = 1`.
pub fn phi3_witness() -> crate::poly::Assignment {
    let f = field();
    let mut a = crate::poly::Assignment::new();
    for (i, y) in cell_names(6).iter().enumerate() {
        a.set(y, if i < 3 { white(&f) } else { green(&f) });
    }
    a.set("x", red(&f));
    a
}

/// Writes the corpus `.fol` files into `dir` and returns their paths.
pub fn write_corpus(dir: &Path) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let walkthrough = "exists b. forall a. exists y x. (y = a*x^2 + b*x + c /\\ y = a*x)";
    let files: Vec<(&str, &str, String)> = vec![
        ("walkthrough.fol", "3", walkthrough.to_string()),
        ("phi1.fol", "4", build_phi1().to_string()),
        ("phi2.fol", "4", build_phi2().to_string()),
        ("phi3.fol", "4", build_phi3().to_string()),
        ("phi3_18.fol", "4", build_phi3_with(Neighborhood::Eighteen).to_string()),
        ("phi1_check.fol", "4", phi1_check_with(Neighborhood::Eighteen).to_string()),
        ("phi2_check.fol", "4", phi2_check_with(Neighborhood::Eighteen).to_string()),
        ("phi1_6.fol", "4", build_phi1_with(Neighborhood::Six).to_string()),
        ("phi2_6.fol", "4", build_phi2_with(Neighborhood::Six).to_string()),
        ("phi1_check_6.fol", "4", phi1_check_with(Neighborhood::Six).to_string()),
        ("phi2_check_6.fol", "4", phi2_check_with(Neighborhood::Six).to_string()),
    ];
    let mut paths = Vec::new();
    for (name, q, body) in files {
        let path = dir.join(name);
        fs::write(&path, format!("# field: {q}\n{body}\n"))?;
        paths.push(path);
    }
    Ok(paths)
}
