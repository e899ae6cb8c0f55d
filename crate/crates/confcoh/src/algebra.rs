//! Finite Lie conformal algebras presented by λ-bracket tables.
//!
//! An algebra here is a free module over the polynomial ring in `∂` with a
//! finite ordered list of generators and a table of λ-brackets
//!
//! ```text
//! [a_λ b] = Σ_c  p_{ab}^c(∂, λ) · c
//! ```
//!
//! with polynomial coefficients (written in the variables `D` and `x`). The
//! defining axioms — sesquilinearity is built into the representation,
//! skew-symmetry and the Jacobi identity are checked symbolically — are
//! residual computations in formal variables, so a passing check is a proof,
//! not a sample test.
//!
//! A generator may be designated as the *Virasoro marker* `L`; its self
//! bracket must be `(∂ + 2λ)L`. Conformal weights, the grading by which the
//! cochain complex is filtered, are read off the brackets against the marker:
//! the algebra is graded when `[a_λ L] = (Δ_a ∂ + (Δ_a + 1) λ) a` for every
//! generator `a`.

use crate::poly::{parse_poly, Polynomial, Var};
use crate::rational::Rational;
use crate::{Error, Result};
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

/// A named generator; `index` is its position in the algebra's ordered
/// generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub index: usize,
}

/// A finite Lie conformal algebra given by an explicit bracket table.
#[derive(Clone, Debug)]
pub struct LieConformalAlgebra {
    name: String,
    generators: Vec<Generator>,
    table: BTreeMap<(usize, usize), BTreeMap<usize, Polynomial>>,
    virasoro: Option<usize>,
}

fn empty_bracket() -> &'static BTreeMap<usize, Polynomial> {
    static EMPTY: OnceLock<BTreeMap<usize, Polynomial>> = OnceLock::new();
    EMPTY.get_or_init(BTreeMap::new)
}

impl LieConformalAlgebra {
    /// Assembles an algebra from named parts, validating structure (but not
    /// the Lie axioms; see [`LieConformalAlgebra::check_axioms`]).
    ///
    /// Each bracket entry `(a, b, c, p)` contributes `p(∂, λ) · c` to
    /// `[a_λ b]`; coefficient polynomials may use only `D` and `x`.
    pub fn from_parts(
        name: &str,
        generators: &[&str],
        brackets: Vec<(String, String, String, Polynomial)>,
        virasoro: Option<&str>,
    ) -> Result<LieConformalAlgebra> {
        let mut gens = Vec::new();
        for (index, &g) in generators.iter().enumerate() {
            if gens.iter().any(|x: &Generator| x.name == g) {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("duplicate generator `{g}`"),
                });
            }
            gens.push(Generator {
                name: g.to_string(),
                index,
            });
        }
        let mut algebra = LieConformalAlgebra {
            name: name.to_string(),
            generators: gens,
            table: BTreeMap::new(),
            virasoro: None,
        };
        for (a, b, c, p) in brackets {
            let (ai, bi, ci) = (
                algebra.gen_index(&a)?,
                algebra.gen_index(&b)?,
                algebra.gen_index(&c)?,
            );
            for v in p.vars() {
                if !matches!(v, Var::D | Var::X) {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!(
                            "bracket coefficient for [{a} {b}] -> {c} uses variable {v}; only D and x are allowed"
                        ),
                    });
                }
            }
            let slot = algebra
                .table
                .entry((ai, bi))
                .or_default()
                .insert(ci, p);
            if slot.is_some() {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("duplicate bracket entry [{a} {b}] -> {c}"),
                });
            }
        }
        if let Some(l) = virasoro {
            let li = algebra.gen_index(l)?;
            let expected = parse_poly("D + 2*x").expect("static polynomial");
            let self_bracket = algebra.bracket(li, li);
            let ok = self_bracket.len() == 1
                && self_bracket.get(&li).is_some_and(|p| *p == expected);
            if !ok {
                return Err(Error::BadVirasoro(l.to_string()));
            }
            algebra.virasoro = Some(li);
        }
        Ok(algebra)
    }

    /// One of the builtin algebras: `vir` (Virasoro), `hv` (Heisenberg
    /// Virasoro), or `sv` (Schrödinger-Virasoro).
    pub fn builtin(name: &str) -> Result<LieConformalAlgebra> {
        let spec: &[(&str, &str, &str, &str)] = match name {
            "vir" => &[("L", "L", "D + 2*x", "L")],
            "hv" => &[
                ("L", "L", "D + 2*x", "L"),
                ("L", "M", "D + x", "M"),
                ("M", "L", "x", "M"),
            ],
            "sv" => &[
                ("L", "L", "D + 2*x", "L"),
                ("L", "Y", "D + 3/2*x", "Y"),
                ("Y", "L", "1/2*D + 3/2*x", "Y"),
                ("Y", "Y", "D + 2*x", "M"),
                ("L", "M", "D + x", "M"),
                ("M", "L", "x", "M"),
            ],
            other => return Err(Error::UnknownAlgebra(other.to_string())),
        };
        let generators: Vec<&str> = match name {
            "vir" => vec!["L"],
            "hv" => vec!["L", "M"],
            _ => vec!["L", "Y", "M"],
        };
        let brackets = spec
            .iter()
            .map(|&(a, b, p, c)| {
                Ok((
                    a.to_string(),
                    b.to_string(),
                    c.to_string(),
                    parse_poly(p)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        LieConformalAlgebra::from_parts(name, &generators, brackets, Some("L"))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Resolves a generator name to its index.
    pub fn gen_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .map(|g| g.index)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn gen_name(&self, index: usize) -> &str {
        &self.generators[index].name
    }

    /// The coefficients of `[a_λ b]`, keyed by output generator.
    pub fn bracket(&self, a: usize, b: usize) -> &BTreeMap<usize, Polynomial> {
        self.table.get(&(a, b)).unwrap_or_else(|| empty_bracket())
    }

    /// The designated Virasoro generator, if any.
    pub fn virasoro(&self) -> Option<usize> {
        self.virasoro
    }

    /// Iterates all stored bracket entries `(a, b, c, p)`.
    pub fn bracket_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Polynomial)> {
        self.table
            .iter()
            .flat_map(|(&(a, b), outs)| outs.iter().map(move |(&c, p)| (a, b, c, p)))
    }

    /// Symbolically verifies skew-symmetry and the Jacobi identity for every
    /// generator pair and triple.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.generator_count();
        let mut failures = Vec::new();

        // Skew-symmetry: [a_λ b] = −[b_{−λ−∂} a], i.e. for every output c
        //   p_{ab}^c(D, x) + p_{ba}^c(D, −x−D) = 0.
        let minus_x_minus_d = parse_poly("-x - D").expect("static polynomial");
        for a in 0..n {
            for b in 0..n {
                let mut residuals: BTreeMap<usize, Polynomial> = BTreeMap::new();
                for (&c, p) in self.bracket(a, b) {
                    *residuals.entry(c).or_default() += p;
                }
                for (&c, p) in self.bracket(b, a) {
                    let shifted = p.substitute(Var::X, &minus_x_minus_d);
                    *residuals.entry(c).or_default() += &shifted;
                }
                for (c, r) in residuals {
                    if !r.is_zero() {
                        failures.push(AxiomFailure {
                            kind: AxiomKind::SkewSymmetry,
                            gens: vec![self.gen_name(a).into(), self.gen_name(b).into()],
                            output: self.gen_name(c).into(),
                            residual: r,
                        });
                    }
                }
            }
        }

        // Jacobi: [a_λ [b_µ c]] = [[a_λ b]_{λ+µ} c] + [b_µ [a_λ c]] with
        // λ = x, µ = y; residuals are collected per output generator.
        let x_plus_y = parse_poly("x + y").expect("static polynomial");
        let neg_x_minus_y = parse_poly("-x - y").expect("static polynomial");
        let d_plus_x = parse_poly("D + x").expect("static polynomial");
        let d_plus_y = parse_poly("D + y").expect("static polynomial");
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut residuals: BTreeMap<usize, Polynomial> = BTreeMap::new();
                    // LHS: Σ_e p_{bc}^e(D+x, y) · p_{ae}^f(D, x)
                    for (&e, p_bc) in self.bracket(b, c) {
                        let outer = p_bc
                            .substitute(Var::X, &Polynomial::var(Var::Y))
                            .substitute(Var::D, &d_plus_x);
                        for (&f, p_ae) in self.bracket(a, e) {
                            *residuals.entry(f).or_default() += &(&outer * p_ae);
                        }
                    }
                    // RHS1: Σ_e p_{ab}^e(−x−y, x) · p_{ec}^f(D, x+y)
                    for (&e, p_ab) in self.bracket(a, b) {
                        let outer = p_ab.substitute(Var::D, &neg_x_minus_y);
                        for (&f, p_ec) in self.bracket(e, c) {
                            let inner = p_ec.substitute(Var::X, &x_plus_y);
                            *residuals.entry(f).or_default() -= &(&outer * &inner);
                        }
                    }
                    // RHS2: Σ_e p_{ac}^e(D+y, x) · p_{be}^f(D, y)
                    for (&e, p_ac) in self.bracket(a, c) {
                        let outer = p_ac.substitute(Var::D, &d_plus_y);
                        for (&f, p_be) in self.bracket(b, e) {
                            let inner = p_be.substitute(Var::X, &Polynomial::var(Var::Y));
                            *residuals.entry(f).or_default() -= &(&outer * &inner);
                        }
                    }
                    for (f, r) in residuals {
                        if !r.is_zero() {
                            failures.push(AxiomFailure {
                                kind: AxiomKind::Jacobi,
                                gens: vec![
                                    self.gen_name(a).into(),
                                    self.gen_name(b).into(),
                                    self.gen_name(c).into(),
                                ],
                                output: self.gen_name(f).into(),
                                residual: r,
                            });
                        }
                    }
                }
            }
        }
        AxiomReport { failures }
    }

    /// The conformal weight of every generator, read off the brackets against
    /// the Virasoro marker. Errors if no marker is designated or the algebra
    /// is not graded this way.
    pub fn weight_table(&self) -> Result<Vec<Rational>> {
        let l = self
            .virasoro
            .ok_or_else(|| Error::MissingVirasoro(self.name.clone()))?;
        let mut weights = Vec::with_capacity(self.generator_count());
        for a in 0..self.generator_count() {
            let entries = self.bracket(a, l);
            let not_graded = |msg: String| Error::NotGraded(self.name.clone(), msg);
            let p = match entries.get(&a) {
                Some(p) if entries.len() == 1 => p,
                _ => {
                    return Err(not_graded(format!(
                        "[{0}_x {1}] is not a multiple of {0}",
                        self.gen_name(a),
                        self.gen_name(l)
                    )))
                }
            };
            let c_d = p.coeff_of(&crate::poly::Monomial::var(Var::D, 1));
            let c_x = p.coeff_of(&crate::poly::Monomial::var(Var::X, 1));
            let linear = &Polynomial::var(Var::D).scale(&c_d)
                + &Polynomial::var(Var::X).scale(&c_x);
            if *p != linear || c_x != &c_d + Rational::one() {
                return Err(not_graded(format!(
                    "[{0}_x {1}] = ({p}) {0} does not have the form (w*D + (w + 1)*x) {0}",
                    self.gen_name(a),
                    self.gen_name(l)
                )));
            }
            weights.push(c_d);
        }
        Ok(weights)
    }
}

/// Which axiom a residual violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomKind {
    SkewSymmetry,
    Jacobi,
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomKind::SkewSymmetry => write!(f, "skew-symmetry"),
            AxiomKind::Jacobi => write!(f, "jacobi"),
        }
    }
}

/// A nonzero axiom residual: the offending generator tuple, the output
/// generator along which it appears, and the residual polynomial itself.
#[derive(Clone, Debug)]
pub struct AxiomFailure {
    pub kind: AxiomKind,
    pub gens: Vec<String>,
    pub output: String,
    pub residual: Polynomial,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails on ({}) along {}: residual {}",
            self.kind,
            self.gens.join(", "),
            self.output,
            self.residual
        )
    }
}

/// Outcome of the symbolic axiom verification.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    /// True iff every residual vanished.
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    /// True iff some failure of `kind` involves exactly these generators.
    pub fn fails_on(&self, kind: AxiomKind, gens: &[&str]) -> bool {
        self.failures
            .iter()
            .any(|f| f.kind == kind && f.gens == gens)
    }
}

/// Parses an algebra description file.
///
/// The format is line oriented; `#` starts a comment. Expected directives:
///
/// ```text
/// algebra <name>
/// generators <g1> <g2> ...
/// virasoro <g>            # optional
/// bracket <a> <b> = (<poly in D, x>) <c> [+ (<poly>) <c'> ...]
/// ```
///
/// Unless `skip_axioms` is set, the loaded table is symbolically verified and
/// an axiom failure is an error.
pub fn load_algebra(text: &str, skip_axioms: bool) -> Result<LieConformalAlgebra> {
    let mut name: Option<String> = None;
    let mut generators: Option<Vec<String>> = None;
    let mut virasoro: Option<String> = None;
    let mut brackets: Vec<(String, String, String, Polynomial)> = Vec::new();
    let mut seen: Vec<(String, String, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "algebra" => {
                if name.replace(rest.to_string()).is_some() {
                    return Err(err("duplicate `algebra` directive".into()));
                }
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(err("expected `algebra <name>`".into()));
                }
            }
            "generators" => {
                let gens: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if gens.is_empty() {
                    return Err(err("expected `generators <g1> <g2> ...`".into()));
                }
                if generators.replace(gens).is_some() {
                    return Err(err("duplicate `generators` directive".into()));
                }
            }
            "virasoro" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(err("expected `virasoro <generator>`".into()));
                }
                if virasoro.replace(rest.to_string()).is_some() {
                    return Err(err("duplicate `virasoro` directive".into()));
                }
            }
            "bracket" => {
                let (pair, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| err("expected `bracket <a> <b> = ...`".into()))?;
                let pair: Vec<&str> = pair.split_whitespace().collect();
                let [a, b] = pair[..] else {
                    return Err(err("expected two generators before `=`".into()));
                };
                for (poly, out) in parse_bracket_rhs(rhs, line_no)? {
                    let key = (a.to_string(), b.to_string(), out.clone());
                    if seen.contains(&key) {
                        return Err(err(format!(
                            "duplicate bracket entry [{a} {b}] -> {out}"
                        )));
                    }
                    seen.push(key);
                    brackets.push((a.to_string(), b.to_string(), out, poly));
                }
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }

    let name = name.ok_or(Error::Parse {
        line: 0,
        msg: "missing `algebra` directive".into(),
    })?;
    let generators = generators.ok_or(Error::Parse {
        line: 0,
        msg: "missing `generators` directive".into(),
    })?;
    let gen_refs: Vec<&str> = generators.iter().map(String::as_str).collect();
    let algebra =
        LieConformalAlgebra::from_parts(&name, &gen_refs, brackets, virasoro.as_deref())?;
    if !skip_axioms {
        let report = algebra.check_axioms();
        if !report.ok() {
            let summary = report
                .failures
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; ");
            return Err(Error::AxiomsFailed(name, summary));
        }
    }
    Ok(algebra)
}

/// Parses `(<poly>) <gen> [+ (<poly>) <gen> ...]`.
fn parse_bracket_rhs(rhs: &str, line_no: usize) -> Result<Vec<(Polynomial, String)>> {
    let err = |msg: String| Error::Parse { line: line_no, msg };
    let mut out = Vec::new();
    let mut s = rhs.trim();
    loop {
        if !s.starts_with('(') {
            return Err(err(format!(
                "expected `(<polynomial>) <generator>`, found `{s}`"
            )));
        }
        // Find the matching close paren.
        let mut depth = 0usize;
        let mut close = None;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(i);
                        break;
                    }
                }
                _ => {}
            }
        }
        let close = close.ok_or_else(|| err("unbalanced parentheses".into()))?;
        let poly: Polynomial = s[1..close].parse().map_err(|e| match e {
            Error::PolySyntax { input, msg } => err(format!("in `{input}`: {msg}")),
            other => other,
        })?;
        s = s[close + 1..].trim();
        let gen_end = s
            .find(|c: char| c.is_whitespace() || c == '+')
            .unwrap_or(s.len());
        let gen = &s[..gen_end];
        if gen.is_empty() {
            return Err(err("missing output generator after coefficient".into()));
        }
        out.push((poly, gen.to_string()));
        s = s[gen_end..].trim();
        if s.is_empty() {
            return Ok(out);
        }
        s = s
            .strip_prefix('+')
            .ok_or_else(|| err(format!("expected `+` between summands, found `{s}`")))?
            .trim();
    }
}
