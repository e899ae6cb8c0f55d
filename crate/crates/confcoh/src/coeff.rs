//! Coefficient modules for the cochain complex.
//!
//! Two one-dimensional families are supported:
//!
//! * the trivial module `C_a`: the underlying space is the scalars, `∂` acts
//!   by multiplication with a fixed rational `a`, and every generator acts by
//!   zero;
//! * the free rank-one module `M_{α,β}` over an algebra with a Virasoro
//!   marker `L`: the underlying space is `C[∂]·v`, the marker acts by
//!   `L_λ v = (∂ + αλ + β) v`, and all other generators act by zero.
//!
//! A module is stored as an action table `g ↦ q_g(∂, λ)` (absent means zero),
//! so arbitrary rank-one action tables can also be built directly — that is
//! how the negative-control checks feed broken actions through the same
//! verifier. The module axiom
//!
//! ```text
//! a_λ (b_µ v) − b_µ (a_λ v) = [a_λ b]_{λ+µ} v
//! ```
//!
//! is verified symbolically for every ordered generator pair.

use crate::algebra::LieConformalAlgebra;
use crate::poly::{Polynomial, Var};
use crate::rational::{parse_rational, Rational};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// A coefficient-module request, as written on a command line:
/// `trivial:a=<rat>` or `rank1:alpha=<rat>,beta=<rat>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffSpec {
    Trivial { a: Rational },
    RankOne { alpha: Rational, beta: Rational },
}

impl FromStr for CoeffSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<CoeffSpec> {
        let err = |msg: &str| Error::CoeffSpec {
            input: s.to_string(),
            msg: msg.to_string(),
        };
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| err("expected `trivial:...` or `rank1:...`"))?;
        let parse_kv = |part: &str, key: &str| -> Result<Rational> {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| err("expected `key=value`"))?;
            if k.trim() != key {
                return Err(err(&format!("expected `{key}=...`, found `{k}`")));
            }
            parse_rational(v)
        };
        match kind.trim() {
            "trivial" => Ok(CoeffSpec::Trivial {
                a: parse_kv(args, "a")?,
            }),
            "rank1" => {
                let (first, second) = args
                    .split_once(',')
                    .ok_or_else(|| err("expected `alpha=...,beta=...`"))?;
                Ok(CoeffSpec::RankOne {
                    alpha: parse_kv(first, "alpha")?,
                    beta: parse_kv(second, "beta")?,
                })
            }
            other => Err(err(&format!("unknown coefficient family `{other}`"))),
        }
    }
}

impl fmt::Display for CoeffSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffSpec::Trivial { a } => write!(f, "trivial:a={a}"),
            CoeffSpec::RankOne { alpha, beta } => {
                write!(f, "rank1:alpha={alpha},beta={beta}")
            }
        }
    }
}

impl CoeffSpec {
    /// Builds the actual module over a given algebra.
    pub fn instantiate(&self, algebra: &LieConformalAlgebra) -> Result<CoeffModule> {
        match self {
            CoeffSpec::Trivial { a } => Ok(CoeffModule::trivial(a.clone())),
            CoeffSpec::RankOne { alpha, beta } => {
                CoeffModule::rank_one(algebra, alpha.clone(), beta.clone())
            }
        }
    }
}

/// A one-dimensional (over `C` or over `C[∂]`) coefficient module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffModule {
    /// `C_a`: values are scalars, `∂` acts by `a`, generators act by zero.
    Trivial { a: Rational },
    /// A free rank-one module `C[∂]·v` with action table `g ↦ q_g(∂, λ)`,
    /// meaning `g_λ v = q_g(∂, λ) v`; absent generators act by zero.
    RankOne {
        /// Canonical parameters when this is `M_{α,β}` (action
        /// `(∂ + αλ + β)` on the Virasoro marker); `None` for custom tables.
        params: Option<(Rational, Rational)>,
        actions: BTreeMap<usize, Polynomial>,
    },
}

impl CoeffModule {
    /// The trivial module `C_a`.
    pub fn trivial(a: Rational) -> CoeffModule {
        CoeffModule::Trivial { a }
    }

    /// The free rank-one module `M_{α,β}`; requires a Virasoro marker.
    pub fn rank_one(
        algebra: &LieConformalAlgebra,
        alpha: Rational,
        beta: Rational,
    ) -> Result<CoeffModule> {
        let l = algebra
            .virasoro()
            .ok_or_else(|| Error::MissingVirasoro(algebra.name().to_string()))?;
        let action = &(&Polynomial::var(Var::D)
            + &Polynomial::var(Var::X).scale(&alpha))
            + &Polynomial::constant(beta.clone());
        Ok(CoeffModule::RankOne {
            params: Some((alpha, beta)),
            actions: BTreeMap::from([(l, action)]),
        })
    }

    /// A free rank-one module with an arbitrary action table (for tests and
    /// negative controls).
    pub fn rank_one_custom(actions: BTreeMap<usize, Polynomial>) -> CoeffModule {
        CoeffModule::RankOne {
            params: None,
            actions,
        }
    }

    /// True for the trivial family.
    pub fn is_trivial(&self) -> bool {
        matches!(self, CoeffModule::Trivial { .. })
    }

    /// The scalar `a` if this is `C_a`.
    pub fn trivial_scalar(&self) -> Option<&Rational> {
        match self {
            CoeffModule::Trivial { a } => Some(a),
            CoeffModule::RankOne { .. } => None,
        }
    }

    /// The `(α, β)` parameters if this is a canonical `M_{α,β}`.
    pub fn rank_one_params(&self) -> Option<(&Rational, &Rational)> {
        match self {
            CoeffModule::RankOne {
                params: Some((a, b)),
                ..
            } => Some((a, b)),
            _ => None,
        }
    }

    /// The action polynomial `q_g(∂, λ)` of a generator (zero if absent).
    pub fn action(&self, g: usize) -> Option<&Polynomial> {
        match self {
            CoeffModule::Trivial { .. } => None,
            CoeffModule::RankOne { actions, .. } => actions.get(&g),
        }
    }

    /// Applies `g` with bracket parameter `slot` to a module-valued
    /// polynomial: `value(∂, …) v ↦ value(∂ + λ, …) q_g(∂, λ) v`, with
    /// `λ = slot`.
    pub fn module_action(&self, g: usize, value: &Polynomial, slot: Var) -> Polynomial {
        let Some(q) = self.action(g) else {
            return Polynomial::zero();
        };
        debug_assert!(slot != Var::D && slot != Var::X);
        let shifted = value.substitute(
            Var::D,
            &(&Polynomial::var(Var::D) + &Polynomial::var(slot)),
        );
        let q_at_slot = q.substitute(Var::X, &Polynomial::var(slot));
        &shifted * &q_at_slot
    }

    /// How `∂` acts on values: the scalar `a` for `C_a`, multiplication by
    /// `D` for free rank-one modules.
    pub fn partial_shift(&self) -> Polynomial {
        match self {
            CoeffModule::Trivial { a } => Polynomial::constant(a.clone()),
            CoeffModule::RankOne { .. } => Polynomial::var(Var::D),
        }
    }

    /// Applies the complex's `∂` operator to a value carrying the given slot
    /// variables: multiplication by `(∂_module + Σ λᵢ)`.
    pub fn partial_on_value(&self, value: &Polynomial, lambda_vars: &[Var]) -> Polynomial {
        debug_assert!(
            !self.is_trivial() || value.degree_in(|v| v == Var::D).unwrap_or(0) == 0,
            "trivial-module values must not contain D"
        );
        let mut factor = self.partial_shift();
        for &v in lambda_vars {
            factor += &Polynomial::var(v);
        }
        &factor * value
    }

    /// Canonical description, matching the command-line spec syntax.
    pub fn describe(&self) -> String {
        match self {
            CoeffModule::Trivial { a } => format!("trivial:a={a}"),
            CoeffModule::RankOne {
                params: Some((alpha, beta)),
                ..
            } => format!("rank1:alpha={alpha},beta={beta}"),
            CoeffModule::RankOne { params: None, .. } => "rank1:custom".to_string(),
        }
    }
}

/// A nonzero module-axiom residual on an ordered generator pair.
#[derive(Clone, Debug)]
pub struct ModuleFailure {
    pub gens: Vec<String>,
    pub residual: Polynomial,
}

impl fmt::Display for ModuleFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "module axiom fails on ({}): residual {}",
            self.gens.join(", "),
            self.residual
        )
    }
}

/// Outcome of the symbolic module-axiom verification.
#[derive(Clone, Debug, Default)]
pub struct ModuleReport {
    pub failures: Vec<ModuleFailure>,
}

impl ModuleReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fails_on(&self, gens: &[&str]) -> bool {
        self.failures.iter().any(|f| f.gens == gens)
    }
}

/// Symbolically verifies `a_λ (b_µ v) − b_µ (a_λ v) = [a_λ b]_{λ+µ} v` for
/// every ordered generator pair. For the trivial family all three terms
/// vanish identically, so the check passes vacuously.
pub fn check_module_axioms(
    algebra: &LieConformalAlgebra,
    module: &CoeffModule,
) -> ModuleReport {
    let n = algebra.generator_count();
    let mut failures = Vec::new();
    let zero = Polynomial::zero();
    let q_of = |g: usize| module.action(g).unwrap_or(&zero);
    let d_plus_x = &Polynomial::var(Var::D) + &Polynomial::var(Var::X);
    let d_plus_y = &Polynomial::var(Var::D) + &Polynomial::var(Var::Y);
    let x_plus_y = &Polynomial::var(Var::X) + &Polynomial::var(Var::Y);
    let neg_x_minus_y = -&x_plus_y;
    for a in 0..n {
        for b in 0..n {
            // a_λ (b_µ v): q_b(∂+λ, µ) q_a(∂, λ)
            let lhs1 = &q_of(b)
                .substitute(Var::X, &Polynomial::var(Var::Y))
                .substitute(Var::D, &d_plus_x)
                * q_of(a);
            // b_µ (a_λ v): q_a(∂+µ, λ) q_b(∂, µ)
            let lhs2 = &q_of(a).substitute(Var::D, &d_plus_y)
                * &q_of(b).substitute(Var::X, &Polynomial::var(Var::Y));
            // [a_λ b]_{λ+µ} v: Σ_c p_{ab}^c(−λ−µ, λ) q_c(∂, λ+µ)
            let mut rhs = Polynomial::zero();
            for (&c, p) in algebra.bracket(a, b) {
                let outer = p.substitute(Var::D, &neg_x_minus_y);
                let inner = q_of(c).substitute(Var::X, &x_plus_y);
                rhs += &(&outer * &inner);
            }
            let residual = &(&lhs1 - &lhs2) - &rhs;
            if !residual.is_zero() {
                failures.push(ModuleFailure {
                    gens: vec![
                        algebra.gen_name(a).to_string(),
                        algebra.gen_name(b).to_string(),
                    ],
                    residual,
                });
            }
        }
    }
    ModuleReport { failures }
}
