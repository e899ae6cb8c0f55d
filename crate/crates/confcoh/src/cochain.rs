//! Cochains, the differential, and the homotopy operators.
//!
//! A `q`-cochain with values in a one-dimensional module is a polynomial-
//! valued function `γ_{λ1..λq}(a1, …, aq)` of `q` generators, linear in each
//! slot and skew-symmetric under simultaneous permutation of generators and
//! their λ variables. It is therefore determined by its values on canonical
//! tuples — generator tuples sorted by index — and those values are
//! *block-skew* polynomials: antisymmetric in the λ variables attached to
//! equal generators.
//!
//! Design notes:
//!
//! * Components are stored on canonical tuples only; evaluation on an
//!   arbitrary tuple stably sorts the generators, renames the λ variables
//!   along the sorting permutation, and multiplies by its sign. This is the
//!   single place where the orientation convention lives; everything else
//!   (the differential, the homotopy operators, basis enumeration) goes
//!   through it.
//! * The differential inserts bracket results into the first argument slot
//!   via the reserved variable `t`, then substitutes `t ↦ λi + λj`; bracket
//!   coefficients are specialized by `∂ ↦ −(λi + λj)`, `λ ↦ λi`.
//! * Bases of block-skew polynomials are signed orbit sums over block
//!   permutations of monomials whose exponents strictly decrease inside each
//!   block, with no factorial normalization: the coefficient of the
//!   representative monomial in its own orbit sum is exactly 1, which is what
//!   lets coordinates be read off without solving a linear system.

use crate::algebra::LieConformalAlgebra;
use crate::coeff::CoeffModule;
use crate::poly::{Monomial, Polynomial, Var};
use crate::rational::Rational;
use crate::{Error, Result};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

/// How many of each generator a cochain argument tuple contains.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeSignature {
    counts: Vec<usize>,
}

impl TypeSignature {
    /// Builds from per-generator counts (one entry per algebra generator).
    pub fn new(counts: Vec<usize>) -> TypeSignature {
        TypeSignature { counts }
    }

    /// The signature of an argument tuple.
    pub fn of_tuple(tuple: &[usize], gen_count: usize) -> TypeSignature {
        let mut counts = vec![0usize; gen_count];
        for &g in tuple {
            counts[g] += 1;
        }
        TypeSignature { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Total number of arguments.
    pub fn arity(&self) -> usize {
        self.counts.iter().sum()
    }

    /// The canonical (sorted) tuple with this signature.
    pub fn canonical_tuple(&self) -> Vec<usize> {
        let mut tuple = Vec::with_capacity(self.arity());
        for (g, &c) in self.counts.iter().enumerate() {
            tuple.extend(std::iter::repeat_n(g, c));
        }
        tuple
    }

    /// Slot ranges of equal generators in the canonical tuple.
    pub fn blocks(&self) -> Vec<Range<usize>> {
        let mut blocks = Vec::new();
        let mut start = 0;
        for &c in &self.counts {
            if c > 0 {
                blocks.push(start..start + c);
                start += c;
            }
        }
        blocks
    }

    /// The minimal λ-degree a nonzero block-skew component can have:
    /// `Σ_blocks C(len, 2)`, from the forced Vandermonde factors.
    pub fn vandermonde_degree(&self) -> usize {
        self.counts.iter().map(|&c| c * c.saturating_sub(1) / 2).sum()
    }
}

/// The slot variables `x1..xq` of an arity-`q` cochain.
pub fn lambda_vars(arity: usize) -> Vec<Var> {
    (1..=arity).map(Var::lam).collect()
}

/// All canonical (non-decreasing) generator tuples of a given arity.
pub fn canonical_tuples(gen_count: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(arity);
    fn rec(out: &mut Vec<Vec<usize>>, current: &mut Vec<usize>, from: usize, n: usize, left: usize) {
        if left == 0 {
            out.push(current.clone());
            return;
        }
        for g in from..n {
            current.push(g);
            rec(out, current, g, n, left - 1);
            current.pop();
        }
    }
    rec(&mut out, &mut current, 0, gen_count, arity);
    out
}

/// A `q`-cochain, stored by its values on canonical tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    arity: usize,
    components: BTreeMap<Vec<usize>, Polynomial>,
}

impl Cochain {
    /// The zero cochain of the given arity.
    pub fn new(arity: usize) -> Cochain {
        Cochain {
            arity,
            components: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Sets the value on a canonical tuple. Panics on structural misuse (tuple
    /// of wrong length or not sorted, value using variables outside the
    /// arity): those are programming errors, not data errors.
    pub fn set_component(&mut self, tuple: Vec<usize>, value: Polynomial) {
        assert_eq!(tuple.len(), self.arity, "tuple length must equal arity");
        assert!(
            tuple.windows(2).all(|w| w[0] <= w[1]),
            "tuple must be canonical (sorted)"
        );
        for v in value.vars() {
            let ok = match v {
                Var::D => true,
                Var::Lam(i) => (i as usize) <= self.arity,
                _ => false,
            };
            assert!(ok, "component value uses variable {v} outside arity {}", self.arity);
        }
        if value.is_zero() {
            self.components.remove(&tuple);
        } else {
            self.components.insert(tuple, value);
        }
    }

    /// The value on a canonical tuple (zero if absent).
    pub fn component(&self, tuple: &[usize]) -> Polynomial {
        self.components.get(tuple).cloned().unwrap_or_default()
    }

    /// Iterates the nonzero components in canonical tuple order.
    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.components.iter()
    }

    /// Evaluates on an arbitrary generator tuple, with the λ variable of slot
    /// `k` given by `vars[k]`. The tuple is stably sorted into canonical
    /// order; the result picks up the sign of the sorting permutation and the
    /// canonical slot variables are renamed accordingly. `vars` must be
    /// distinct and must not contain `D`.
    pub fn eval_tuple(&self, gens: &[usize], vars: &[Var]) -> Polynomial {
        assert_eq!(gens.len(), self.arity);
        assert_eq!(vars.len(), self.arity);
        let mut order: Vec<usize> = (0..gens.len()).collect();
        order.sort_by_key(|&i| gens[i]);
        let canonical: Vec<usize> = order.iter().map(|&i| gens[i]).collect();
        let Some(p) = self.components.get(&canonical) else {
            return Polynomial::zero();
        };
        let mut inversions = 0usize;
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                if order[i] > order[j] {
                    inversions += 1;
                }
            }
        }
        let map: BTreeMap<Var, Var> = order
            .iter()
            .enumerate()
            .map(|(k, &i)| (Var::lam(k + 1), vars[i]))
            .collect();
        let renamed = p.rename(&map).expect("slot variables are distinct");
        if inversions % 2 == 1 {
            -renamed
        } else {
            renamed
        }
    }

    /// True iff every component is antisymmetric under swapping the λ
    /// variables of equal adjacent generators (adjacent transpositions
    /// generate each block's symmetric group).
    pub fn block_skew_ok(&self) -> bool {
        self.components.iter().all(|(tuple, p)| {
            (0..tuple.len().saturating_sub(1)).all(|i| {
                if tuple[i] != tuple[i + 1] {
                    return true;
                }
                let swap: BTreeMap<Var, Var> = [
                    (Var::lam(i + 1), Var::lam(i + 2)),
                    (Var::lam(i + 2), Var::lam(i + 1)),
                ]
                .into();
                p.rename(&swap).expect("swap is injective") == -p
            })
        })
    }

    /// Pointwise sum (arities must agree).
    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (tuple, p) in &other.components {
            let sum = &out.component(tuple) + p;
            out.set_component(tuple.clone(), sum);
        }
        out
    }

    /// Pointwise difference.
    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rational) -> Cochain {
        let mut out = Cochain::new(self.arity);
        if c.is_zero() {
            return out;
        }
        for (tuple, p) in &self.components {
            out.components.insert(tuple.clone(), p.scale(c));
        }
        out
    }

    /// The largest total polynomial degree over all components (`None` for
    /// the zero cochain).
    pub fn max_degree(&self) -> Option<u32> {
        self.components.values().filter_map(Polynomial::degree).max()
    }

    /// The coefficient used for normalization: taking the graded-lex-greatest
    /// monomial over all components (first canonical tuple wins ties), its
    /// coefficient.
    pub fn leading_coefficient(&self) -> Option<Rational> {
        let mut best: Option<(&Monomial, &Rational)> = None;
        for p in self.components.values() {
            if let Some((m, c)) = p.leading() {
                match best {
                    Some((bm, _)) if bm >= m => {}
                    _ => best = Some((m, c)),
                }
            }
        }
        best.map(|(_, c)| c.clone())
    }

    /// Serializable form, with generator names resolved through the algebra.
    pub fn to_data(&self, algebra: &LieConformalAlgebra) -> CochainData {
        CochainData {
            arity: self.arity,
            components: self
                .components
                .iter()
                .map(|(tuple, p)| ComponentData {
                    tuple: tuple.iter().map(|&g| algebra.gen_name(g).to_string()).collect(),
                    value: p.to_string(),
                })
                .collect(),
        }
    }

    /// Parses the serializable form, validating names, canonical tuple order,
    /// and variable usage.
    pub fn from_data(data: &CochainData, algebra: &LieConformalAlgebra) -> Result<Cochain> {
        let mut out = Cochain::new(data.arity);
        for comp in &data.components {
            let tuple = comp
                .tuple
                .iter()
                .map(|name| algebra.gen_index(name))
                .collect::<Result<Vec<usize>>>()?;
            if tuple.len() != data.arity {
                return Err(Error::BadCochain(format!(
                    "tuple {:?} has length {}, expected arity {}",
                    comp.tuple,
                    tuple.len(),
                    data.arity
                )));
            }
            if !tuple.windows(2).all(|w| w[0] <= w[1]) {
                return Err(Error::BadCochain(format!(
                    "tuple {:?} is not in canonical (sorted) order",
                    comp.tuple
                )));
            }
            if out.components.contains_key(&tuple) {
                return Err(Error::BadCochain(format!(
                    "duplicate component on tuple {:?}",
                    comp.tuple
                )));
            }
            let value: Polynomial = comp.value.parse()?;
            for v in value.vars() {
                let ok = matches!(v, Var::D) || matches!(v, Var::Lam(i) if (i as usize) <= data.arity);
                if !ok {
                    return Err(Error::BadComponentVariable {
                        tuple: comp.tuple.clone(),
                        var: v,
                    });
                }
            }
            if !value.is_zero() {
                out.components.insert(tuple, value);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (arity {})", self.arity);
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(tuple, p)| format!("{tuple:?}: {p}"))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// JSON-facing form of a cochain: generator names and polynomial text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainData {
    pub arity: usize,
    pub components: Vec<ComponentData>,
}

/// One component: a canonical generator tuple and its polynomial value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentData {
    pub tuple: Vec<String>,
    pub value: String,
}

/// The differential of the cochain complex.
///
/// For a `q`-cochain γ, `(dγ)` is the `(q+1)`-cochain
///
/// ```text
/// (dγ)_{λ1..λ_{q+1}}(a1, …) =
///     Σ_i (−1)^{i+1} a_{i λi} γ_{…}(… â_i …)
///   + Σ_{i<j} (−1)^{i+j} γ_{λi+λj, …}([a_{i λi} a_j], … â_i â_j …)
/// ```
///
/// where hats are omissions and the bracket result lands in the first
/// argument slot.
pub fn differential(
    algebra: &LieConformalAlgebra,
    module: &CoeffModule,
    gamma: &Cochain,
) -> Cochain {
    let q = gamma.arity();
    let n = algebra.generator_count();
    let mut out = Cochain::new(q + 1);
    let vars = lambda_vars(q + 1);
    for tuple in canonical_tuples(n, q + 1) {
        let mut val = Polynomial::zero();

        // Action terms: (−1)^{i+1} a_{i λi} γ(… without slot i …).
        if !module.is_trivial() {
            for i in 0..=q {
                let sub_gens: Vec<usize> = omit(&tuple, &[i]);
                let sub_vars: Vec<Var> = omit(&vars, &[i]);
                let inner = gamma.eval_tuple(&sub_gens, &sub_vars);
                if inner.is_zero() {
                    continue;
                }
                let acted = module.module_action(tuple[i], &inner, vars[i]);
                if i % 2 == 0 {
                    val += &acted;
                } else {
                    val -= &acted;
                }
            }
        }

        // Bracket terms: (−1)^{i+j} γ([a_i a_j], … without i, j …).
        for i in 0..=q {
            for j in i + 1..=q {
                let bracket = algebra.bracket(tuple[i], tuple[j]);
                if bracket.is_empty() {
                    continue;
                }
                let rest_gens = omit(&tuple, &[i, j]);
                let rest_vars = omit(&vars, &[i, j]);
                let li = Polynomial::var(vars[i]);
                let li_plus_lj = &li + &Polynomial::var(vars[j]);
                for (&c, p) in bracket {
                    let mut ext_gens = Vec::with_capacity(q);
                    ext_gens.push(c);
                    ext_gens.extend_from_slice(&rest_gens);
                    let mut ext_vars = Vec::with_capacity(q);
                    ext_vars.push(Var::T);
                    ext_vars.extend_from_slice(&rest_vars);
                    let inner = gamma.eval_tuple(&ext_gens, &ext_vars);
                    if inner.is_zero() {
                        continue;
                    }
                    let inner = inner.substitute(Var::T, &li_plus_lj);
                    // Bracket coefficient p(∂, λ) at ∂ = −(λi + λj), λ = λi.
                    let coef = p
                        .substitute(Var::D, &-&li_plus_lj)
                        .substitute(Var::X, &li);
                    let term = &coef * &inner;
                    if (i + j) % 2 == 0 {
                        val += &term;
                    } else {
                        val -= &term;
                    }
                }
            }
        }
        if !val.is_zero() {
            out.set_component(tuple, val);
        }
    }
    out
}

/// Applies the complex's `∂` operator: multiplication of every component by
/// `(∂_module + λ1 + … + λq)`.
pub fn partial_cochain(module: &CoeffModule, gamma: &Cochain) -> Cochain {
    let vars = lambda_vars(gamma.arity());
    let mut out = Cochain::new(gamma.arity());
    for (tuple, p) in gamma.components() {
        out.set_component(tuple.clone(), module.partial_on_value(p, &vars));
    }
    out
}

/// The degree-lowering homotopy operator: evaluates against a trailing
/// Virasoro marker and differentiates in its λ at zero,
///
/// ```text
/// (τγ)_{λ1..λ_{q−1}}(a1, …) = (−1)^{q−1} ∂/∂λ γ_{λ1.., λ}(a1, …, L) |_{λ=0}.
/// ```
pub fn tau(algebra: &LieConformalAlgebra, gamma: &Cochain) -> Result<Cochain> {
    tau_like(algebra, gamma, |p| p.diff_at_zero(Var::T))
}

/// The variant homotopy operator used on the reduced complex: same trailing
/// evaluation as [`tau`], but at `λ = 0` without differentiation.
pub fn tau2(algebra: &LieConformalAlgebra, gamma: &Cochain) -> Result<Cochain> {
    tau_like(algebra, gamma, |p| p.set_var_zero(Var::T))
}

fn tau_like(
    algebra: &LieConformalAlgebra,
    gamma: &Cochain,
    eval: impl Fn(&Polynomial) -> Polynomial,
) -> Result<Cochain> {
    let l = algebra
        .virasoro()
        .ok_or_else(|| Error::MissingVirasoro(algebra.name().to_string()))?;
    let q = gamma.arity();
    if q == 0 {
        return Err(Error::ArityTooSmall);
    }
    let negate = (q - 1) % 2 == 1;
    let mut out = Cochain::new(q - 1);
    for tuple in canonical_tuples(algebra.generator_count(), q - 1) {
        let mut ext_gens = tuple.clone();
        ext_gens.push(l);
        let mut ext_vars = lambda_vars(q - 1);
        ext_vars.push(Var::T);
        let v = eval(&gamma.eval_tuple(&ext_gens, &ext_vars));
        if v.is_zero() {
            continue;
        }
        out.set_component(tuple, if negate { -v } else { v });
    }
    Ok(out)
}

fn omit<T: Copy>(items: &[T], skip: &[usize]) -> Vec<T> {
    items
        .iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .map(|(_, &x)| x)
        .collect()
}

/// All permutations of `0..n` with their parities, in a deterministic order.
pub fn permutations_with_parity(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut perms = vec![(Vec::new(), false)];
    for k in 0..n {
        let mut next = Vec::with_capacity(perms.len() * (k + 1));
        for (perm, odd) in &perms {
            for pos in 0..=k {
                let mut extended = perm.clone();
                extended.insert(pos, k);
                // Inserting k at `pos` moves it past (k − pos) elements.
                let flips = (k - pos) % 2 == 1;
                next.push((extended, *odd != flips));
            }
        }
        perms = next;
    }
    perms
}

/// Exponent representatives for block-skew polynomials: all slot exponent
/// vectors of the given total degree that strictly decrease inside each
/// block. Each represents the signed orbit sum [`skew_orbit_poly`] builds.
pub fn skew_exponent_reps(block_lens: &[usize], degree: usize) -> Vec<Vec<u32>> {
    // Strictly decreasing length-n exponents are a staircase plus a partition:
    // e_i = f_i + (n − 1 − i) with f_1 ≥ f_2 ≥ … ≥ f_n ≥ 0.
    fn partitions(total: usize, parts: usize, max: usize, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if total == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let hi = total.min(max);
        for first in (0..=hi).rev() {
            if first * parts < total {
                break;
            }
            acc.push(first as u32);
            partitions(total - first, parts - 1, first, acc, out);
            acc.pop();
        }
    }
    fn block_reps(len: usize, degree: usize) -> Vec<Vec<u32>> {
        let staircase: usize = len * len.saturating_sub(1) / 2;
        let Some(extra) = degree.checked_sub(staircase) else {
            return Vec::new();
        };
        let mut partition_list = Vec::new();
        partitions(extra, len, extra, &mut Vec::new(), &mut partition_list);
        partition_list
            .into_iter()
            .map(|f| {
                f.iter()
                    .enumerate()
                    .map(|(i, &fi)| fi + (len - 1 - i) as u32)
                    .collect()
            })
            .collect()
    }
    fn rec(
        blocks: &[usize],
        degree: usize,
        acc: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let Some((&len, rest)) = blocks.split_first() else {
            if degree == 0 {
                out.push(acc.clone());
            }
            return;
        };
        let min_here: usize = len * len.saturating_sub(1) / 2;
        let min_rest: usize = rest.iter().map(|&l| l * l.saturating_sub(1) / 2).sum();
        for d in min_here..=degree.saturating_sub(min_rest) {
            for head in block_reps(len, d) {
                let base = acc.len();
                acc.extend_from_slice(&head);
                rec(rest, degree - d, acc, out);
                acc.truncate(base);
            }
        }
    }
    let mut out = Vec::new();
    rec(block_lens, degree, &mut Vec::new(), &mut out);
    out
}

/// The signed orbit sum of the monomial `Π λ_slot^{exps[slot]}` over
/// independent permutations of the λ variables inside each block. The
/// coefficient of the representative monomial itself is exactly +1.
pub fn skew_orbit_poly(blocks: &[Range<usize>], exps: &[u32]) -> Polynomial {
    let mut combos: Vec<(Vec<u32>, bool)> = vec![(exps.to_vec(), false)];
    for block in blocks {
        let perms = permutations_with_parity(block.len());
        let mut next = Vec::with_capacity(combos.len() * perms.len());
        for (assign, odd) in &combos {
            for (perm, perm_odd) in &perms {
                let mut permuted = assign.clone();
                for (offset, &src) in perm.iter().enumerate() {
                    permuted[block.start + offset] = assign[block.start + src];
                }
                next.push((permuted, *odd != *perm_odd));
            }
        }
        combos = next;
    }
    let mut out = Polynomial::zero();
    for (assign, odd) in combos {
        let mono = Monomial::from_pairs(
            assign
                .iter()
                .enumerate()
                .map(|(slot, &e)| (Var::lam(slot + 1), e)),
        );
        let coeff = if odd { -Rational::one() } else { Rational::one() };
        out.add_term(mono, coeff);
    }
    out
}

/// A basis of the block-skew cochain component space for one signature and
/// one total degree.
#[derive(Clone, Debug)]
pub struct CochainBasis {
    pub signature: TypeSignature,
    pub degree: usize,
    pub elements: Vec<Cochain>,
}

/// Enumerates a basis of cochains with the given signature whose component
/// has total degree `degree` (λ degree plus `D` power). For the trivial
/// module values carry no `D`; for free rank-one modules `D`-powers up to
/// `d_cap` are included.
pub fn enumerate_basis(
    module: &CoeffModule,
    signature: &TypeSignature,
    degree: usize,
    d_cap: usize,
) -> CochainBasis {
    let tuple = signature.canonical_tuple();
    let blocks = signature.blocks();
    let block_lens: Vec<usize> = blocks.iter().map(|r| r.len()).collect();
    let max_d_pow = if module.is_trivial() {
        0
    } else {
        degree.min(d_cap)
    };
    let mut elements = Vec::new();
    for d_pow in 0..=max_d_pow {
        let lam_degree = degree - d_pow;
        for exps in skew_exponent_reps(&block_lens, lam_degree) {
            let mut value = skew_orbit_poly(&blocks, &exps);
            if d_pow > 0 {
                value = &value * &Polynomial::term(
                    Monomial::var(Var::D, d_pow as u32),
                    Rational::one(),
                );
            }
            let mut cochain = Cochain::new(signature.arity());
            cochain.set_component(tuple.clone(), value);
            elements.push(cochain);
        }
    }
    CochainBasis {
        signature: signature.clone(),
        degree,
        elements,
    }
}
