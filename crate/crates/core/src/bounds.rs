//! The correction factor `mu(n, d)`, exact verification of the 1-factor and
//! permanent inequalities on concrete instances, and display-only evaluators
//! for the asymptotic 1-factorization estimates.
//!
//! Every verdict comes from comparing two integers. Inequalities with
//! irrational sides are raised to the smallest power that makes both sides
//! rational, then cross-multiplied; decimals are carried for display only.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::{
    count_factorizations, count_one_factors, count_proper_decompositions,
    count_proper_edge_colorings_with, count_proper_orientations, multiplicity_product,
};
use crate::hypergraph::{BipartiteGraph, Hypergraph, PartiteHypergraph};
use crate::latin::count_latin_fixed_column;
use crate::numeric::{binomial, factorial, ln_biguint, ln_factorial, LogValue};
use crate::permanent::{
    dow_gibson_bound, permanent, permanent_2d_int, schrijver_lower_bound, trivial_upper_bound,
    ComparisonMethod, IntMatrix2D,
};
use crate::search::SearchConfig;
use crate::tensor::BoolTensor;

/// `mu(n, d)` in the exact form `mu^root = (base_num / base_den)^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuValue {
    pub n: u64,
    pub d: u64,
    pub root: u64,
    pub base_num: BigUint,
    pub base_den: BigUint,
}

/// `mu(n,2) = 1`, `mu(n,3)^2 = (8/9)^n`, and `mu(n,d)^d = (d!^(2d-1) / d^(d^2))^n`
/// for `d >= 4`.
pub fn mu(n: u64, d: u64) -> Result<MuValue> {
    if d < 2 {
        return Err(Error::invalid(format!(
            "mu(n, d) is defined for d >= 2, got {d}"
        )));
    }
    let (root, num, den) = match d {
        2 => (1, BigUint::one(), BigUint::one()),
        3 => (2, BigUint::from(8u32), BigUint::from(9u32)),
        _ => {
            let df = factorial(d);
            (
                d,
                df.pow(2 * d as u32 - 1),
                BigUint::from(d).pow((d * d) as u32),
            )
        }
    };
    let g = num.gcd(&den);
    Ok(MuValue {
        n,
        d,
        root,
        base_num: num / &g,
        base_den: den / g,
    })
}

impl MuValue {
    /// `(base_num^n, base_den^n)`, so that `mu^root = first / second`.
    pub fn powered(&self) -> (BigUint, BigUint) {
        (
            self.base_num.pow(self.n as u32),
            self.base_den.pow(self.n as u32),
        )
    }

    pub fn approx(&self) -> LogValue {
        let ln = (ln_biguint(&self.base_num) - ln_biguint(&self.base_den)) * self.n as f64
            / self.root as f64;
        LogValue::from_ln(ln)
    }

    /// `mu^(1/n)`, the per-vertex factor.
    pub fn per_vertex_ln(&self) -> f64 {
        (ln_biguint(&self.base_num) - ln_biguint(&self.base_den)) / self.root as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Tight,
    Violated,
}

/// The relation a check asserts between its two integer sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `lhs <= rhs`; equality reported as tight.
    Le,
    /// `lhs == rhs`.
    Eq,
}

impl Relation {
    pub fn verdict(self, lhs: &BigUint, rhs: &BigUint) -> Verdict {
        match (self, lhs.cmp(rhs)) {
            (Relation::Le, Ordering::Less) => Verdict::Holds,
            (Relation::Le, Ordering::Equal) => Verdict::Tight,
            (Relation::Eq, Ordering::Equal) => Verdict::Holds,
            _ => Verdict::Violated,
        }
    }
}

/// Exact verdict for one inequality or identity on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub theorem: String,
    pub instance: String,
    pub relation: Relation,
    #[serde(with = "decimal_string")]
    pub lhs: BigUint,
    #[serde(with = "decimal_string")]
    pub rhs: BigUint,
    /// Power to which both original sides were raised before comparing.
    pub root: u64,
    pub verdict: Verdict,
    /// Human-readable approximations; never consulted for the verdict.
    pub decimals: BTreeMap<String, String>,
}

impl CheckReport {
    fn new(
        theorem: &str,
        instance: String,
        relation: Relation,
        lhs: BigUint,
        rhs: BigUint,
        root: u64,
    ) -> Self {
        let verdict = relation.verdict(&lhs, &rhs);
        CheckReport {
            theorem: theorem.to_string(),
            instance,
            relation,
            lhs,
            rhs,
            root,
            verdict,
            decimals: BTreeMap::new(),
        }
    }

    fn decimal(mut self, key: &str, value: impl ToString) -> Self {
        self.decimals.insert(key.to_string(), value.to_string());
        self
    }

    /// Recomputes the verdict from the recorded integer sides.
    pub fn recheck(&self) -> Verdict {
        self.relation.verdict(&self.lhs, &self.rhs)
    }

    pub fn is_violation(&self) -> bool {
        self.verdict == Verdict::Violated
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

mod decimal_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10)
            .ok_or_else(|| serde::de::Error::custom(format!("not a decimal count: {s:?}")))
    }
}

fn describe(g: &Hypergraph) -> String {
    format!(
        "n={} d={} edges={}",
        g.vertex_count(),
        g.uniformity(),
        g.edge_count()
    )
}

fn require_factor_setting(g: &Hypergraph) -> Result<()> {
    if !g.is_simple() {
        return Err(Error::precondition("the hypergraph must be simple"));
    }
    if g.uniformity() < 2 {
        return Err(Error::precondition("uniformity must be at least 2"));
    }
    if !g.vertex_count().is_multiple_of(g.uniformity()) {
        return Err(Error::precondition(format!(
            "d = {} must divide n = {}",
            g.uniformity(),
            g.vertex_count()
        )));
    }
    Ok(())
}

/// `phi(G)^(d*root) * num^n <= rhs_base^root * den^n`, the shape shared by the
/// mu-corrected bounds.
fn mu_corrected(
    theorem: &str,
    instance: String,
    count: &BigUint,
    count_power: u64,
    rhs_base: &BigUint,
    m: &MuValue,
) -> CheckReport {
    let (num, den) = m.powered();
    let lhs = count.pow((count_power * m.root) as u32) * num;
    let rhs = rhs_base.pow(m.root as u32) * den;
    CheckReport::new(theorem, instance, Relation::Le, lhs, rhs, m.root)
}

fn bound_display(rhs_base: &BigUint, m: &MuValue, power: u64) -> LogValue {
    if rhs_base.is_zero() {
        return LogValue::ZERO;
    }
    let ln_mu = m.approx().ln.unwrap_or(0.0);
    LogValue::from_ln((ln_biguint(rhs_base) - ln_mu) / power as f64)
}

/// `phi(G) <= (per M(G) / mu(n, d))^(1/d)`.
pub fn check_theorem4(g: &Hypergraph, cfg: &SearchConfig) -> Result<CheckReport> {
    require_factor_setting(g)?;
    let (n, d) = (g.vertex_count() as u64, g.uniformity() as u64);
    let phi = count_one_factors(g, cfg)?;
    let per = permanent(&g.adjacency_tensor()?, cfg)?;
    let m = mu(n, d)?;
    Ok(mu_corrected("theorem4", describe(g), &phi, d, &per, &m)
        .decimal("phi", &phi)
        .decimal("per", &per)
        .decimal("mu", m.approx())
        .decimal("bound", bound_display(&per, &m, d)))
}

/// `phi(G) <= ((d-1)!^n prod r_i / mu(n, d))^(1/d)` with vertex degrees `r_i`.
pub fn check_corollary_degrees(g: &Hypergraph, cfg: &SearchConfig) -> Result<CheckReport> {
    require_factor_setting(g)?;
    let (n, d) = (g.vertex_count() as u64, g.uniformity() as u64);
    let phi = count_one_factors(g, cfg)?;
    let degree_product = g.degrees().into_iter().fold(BigUint::one(), |a, r| a * r);
    let base = factorial(d - 1).pow(n as u32) * &degree_product;
    let m = mu(n, d)?;
    Ok(mu_corrected("corollary3", describe(g), &phi, d, &base, &m)
        .decimal("phi", &phi)
        .decimal("degree_product", &degree_product)
        .decimal("bound", bound_display(&base, &m, d)))
}

/// `phi(G)^d <= per M(G)` for `d != 3`.
pub fn check_permanent_root(g: &Hypergraph, cfg: &SearchConfig) -> Result<CheckReport> {
    require_factor_setting(g)?;
    if g.uniformity() == 3 {
        return Err(Error::precondition(
            "the unconditional root bound is not established for d = 3",
        ));
    }
    root_bound("permanent_root", g, cfg)
}

/// Experimental: `phi(G)^3 <= per M(G)` for 3-uniform `G`. A violation is a
/// counterexample; holding proves nothing.
pub fn check_conjecture_d3(g: &Hypergraph, cfg: &SearchConfig) -> Result<CheckReport> {
    require_factor_setting(g)?;
    if g.uniformity() != 3 {
        return Err(Error::precondition(
            "the d = 3 conjecture concerns 3-uniform hypergraphs",
        ));
    }
    Ok(root_bound("conjecture-d3", g, cfg)?.decimal("status", "experimental, not a theorem"))
}

fn root_bound(theorem: &str, g: &Hypergraph, cfg: &SearchConfig) -> Result<CheckReport> {
    let d = g.uniformity() as u32;
    let phi = count_one_factors(g, cfg)?;
    let per = permanent(&g.adjacency_tensor()?, cfg)?;
    let lhs = phi.pow(d);
    Ok(
        CheckReport::new(theorem, describe(g), Relation::Le, lhs, per.clone(), 1)
            .decimal("phi", &phi)
            .decimal("per", &per),
    )
}

/// `phi(G)^d * Q(d) <= per M(G)` for a balanced d-partite `G`.
pub fn check_theorem5_partite(pg: &PartiteHypergraph, cfg: &SearchConfig) -> Result<CheckReport> {
    let g = pg.graph();
    if !g.is_simple() {
        return Err(Error::precondition("the hypergraph must be simple"));
    }
    let d = g.uniformity();
    if d < 2 {
        return Err(Error::precondition("uniformity must be at least 2"));
    }
    let phi = count_one_factors(g, cfg)?;
    let per = permanent(&g.adjacency_tensor()?, cfg)?;
    let q = count_latin_fixed_column(d, cfg)?;
    let lhs = phi.pow(d as u32) * &q;
    let instance = format!("{} part_size={}", describe(g), pg.part_size());
    Ok(
        CheckReport::new("theorem5", instance, Relation::Le, lhs, per.clone(), 1)
            .decimal("phi", &phi)
            .decimal("per", &per)
            .decimal("q", &q),
    )
}

fn describe_bipartite(b: &BipartiteGraph) -> String {
    format!(
        "bipartite left={} right={} edges={}",
        b.left_size(),
        b.right_size(),
        b.edges().len()
    )
}

/// `T(B) <= P(B) / mu(n, d)` for a connected d-regular bipartite graph.
pub fn check_lemma4(b: &BipartiteGraph, cfg: &SearchConfig) -> Result<CheckReport> {
    let n = b.left_size();
    let d = b
        .regular_degree()
        .ok_or_else(|| Error::precondition("the bipartite graph must be regular"))?;
    if d < 2 || b.right_size() != n || !n.is_multiple_of(d) {
        return Err(Error::precondition(format!(
            "need equal parts with the degree (>= 2) dividing their size; left {n}, right {}, degree {d}",
            b.right_size()
        )));
    }
    if !b.is_connected() {
        return Err(Error::precondition("the bipartite graph must be connected"));
    }
    let t = count_proper_decompositions(b, cfg)?;
    let p = count_proper_edge_colorings_with(b, d, cfg)?;
    let m = mu(n as u64, d as u64)?;
    Ok(mu_corrected("lemma4", describe_bipartite(b), &t, 1, &p, &m)
        .decimal("t", &t)
        .decimal("p", &p)
        .decimal("mu", m.approx()))
}

/// Counts attached to one 1-factorable d-factor and the three checks on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofIdentities {
    /// Proper orientations.
    pub delta: BigUint,
    /// Ordered 1-factorizations.
    pub phi: BigUint,
    /// Product of multiplicity factorials.
    pub r: BigUint,
    /// Proper d-edge-colorings of the bipartite representation.
    pub p: BigUint,
    /// Proper decompositions of the edge side of the bipartite representation.
    pub t: BigUint,
    /// `delta * r == p`, `phi * r == t`, `phi <= delta / mu`, in that order.
    pub reports: Vec<CheckReport>,
}

impl ProofIdentities {
    pub fn all_hold(&self) -> bool {
        self.reports.iter().all(|r| !r.is_violation())
    }
}

pub fn check_proof_identities(f: &Hypergraph, cfg: &SearchConfig) -> Result<ProofIdentities> {
    let d = f.uniformity();
    if f.regular_degree() != Some(d as u64) {
        return Err(Error::precondition("expected a d-uniform d-factor"));
    }
    let phi = count_factorizations(f, cfg)?.ordered;
    if phi.is_zero() {
        return Err(Error::precondition("the d-factor is not 1-factorable"));
    }
    let delta = count_proper_orientations(f, cfg)?;
    let r = multiplicity_product(f);
    let b = f.bipartite_representation();
    let p = count_proper_edge_colorings_with(&b, d, cfg)?;
    let t = count_proper_decompositions(&b, cfg)?;
    let m = mu(f.vertex_count() as u64, d as u64)?;
    let inst = describe(f);
    let reports = vec![
        CheckReport::new(
            "lemma2",
            inst.clone(),
            Relation::Eq,
            &delta * &r,
            p.clone(),
            1,
        ),
        CheckReport::new(
            "lemma3",
            inst.clone(),
            Relation::Eq,
            &phi * &r,
            t.clone(),
            1,
        ),
        mu_corrected("proposition3", inst, &phi, 1, &delta, &m)
            .decimal("phi", &phi)
            .decimal("delta", &delta)
            .decimal("mu", m.approx()),
    ];
    Ok(ProofIdentities {
        delta,
        phi,
        r,
        p,
        t,
        reports,
    })
}

/// `per A <= prod_i r_i` along `axis`.
pub fn check_trivial(t: &BoolTensor, axis: usize, cfg: &SearchConfig) -> Result<CheckReport> {
    let per = permanent(t, cfg)?;
    let bound = trivial_upper_bound(t, axis)?;
    let inst = format!(
        "tensor d={} n={} ones={} axis={axis}",
        t.dim(),
        t.order(),
        t.count_ones()
    );
    Ok(CheckReport::new(
        "proposition1",
        inst,
        Relation::Le,
        per.clone(),
        bound.clone(),
        1,
    )
    .decimal("per", &per)
    .decimal("bound", &bound))
}

/// `per A <= prod_i r_i!^(1/r_i)` for a 3-dimensional `A`.
pub fn check_dow_gibson(t: &BoolTensor, axis: usize, cfg: &SearchConfig) -> Result<CheckReport> {
    let bound = dow_gibson_bound(t, axis)?;
    let per = permanent(t, cfg)?;
    let c = bound.compare(&per);
    let inst = format!(
        "tensor d=3 n={} ones={} axis={axis}",
        t.order(),
        t.count_ones()
    );
    let method = match c.method {
        ComparisonMethod::Exact => "exact power".to_string(),
        ComparisonMethod::Bracket { bits } => format!("dyadic bracket, {bits} bits per factor"),
    };
    Ok(
        CheckReport::new("dow-gibson", inst, Relation::Le, c.lhs, c.rhs, c.root)
            .decimal("per", &per)
            .decimal("bound", bound.approx())
            .decimal("method", method)
            .decimal("below_trivial", bound.is_at_most_trivial()),
    )
}

/// `per A >= ((k-1)^(k-1) / k^(k-2))^n` for a k-regular non-negative integer matrix.
pub fn check_schrijver(m: &IntMatrix2D, cfg: &SearchConfig) -> Result<CheckReport> {
    let k = m
        .regular_degree()
        .ok_or_else(|| Error::precondition("all row and column sums must be equal"))?;
    let per = permanent_2d_int(m, cfg)?;
    let bound = schrijver_lower_bound(k, m.order() as u64)?;
    let (num, den) = (bound.numer().to_biguint(), bound.denom().to_biguint());
    let (num, den) = (num.expect("positive"), den.expect("positive"));
    let lhs = num;
    let rhs = &per * den;
    let inst = format!("matrix n={} k={k}", m.order());
    Ok(
        CheckReport::new("schrijver", inst, Relation::Le, lhs, rhs, 1)
            .decimal("per", &per)
            .decimal(
                "bound",
                bound.to_f64().map_or("overflow".into(), |b| b.to_string()),
            ),
    )
}

/// `n! / (d!^(n/d) (n/d)!)`, the number of 1-factors of the complete hypergraph.
pub fn phi_complete_exact(n: u64, d: u64) -> Result<BigUint> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::precondition(format!("d = {d} must divide n = {n}")));
    }
    let k = n / d;
    Ok(factorial(n) / (factorial(d).pow(k as u32) * factorial(k)))
}

/// One displayed main term. `log10` is `None` for an exact zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MainTerm {
    pub name: String,
    pub value: String,
    pub log10: Option<f64>,
}

impl MainTerm {
    fn new(name: &str, v: LogValue) -> Self {
        MainTerm {
            name: name.to_string(),
            value: v.to_string(),
            log10: v.log10(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.log10.is_none_or(f64::is_finite)
    }
}

/// Leading terms of the asymptotic 1-factorization estimates for the complete
/// d-uniform hypergraph on n vertices. Not certified bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MainTermsReport {
    pub n: u64,
    pub d: u64,
    pub certified: bool,
    /// Factors per 1-factorization, `C(n-1, d-1)`.
    pub factors_per_factorization: String,
    /// Ones per hyperplane of the adjacency matrix after removing `i` disjoint
    /// 1-factors, `(t - i) (d-1)!`, for `i = 0..t`.
    pub hyperplane_ones: Vec<String>,
    /// `n^d / d!`, the outer exponent.
    pub exponent: String,
    pub terms: Vec<MainTerm>,
    /// Small exact counts, labeled by convention; absent when out of reach.
    pub exact_ordered: Option<String>,
    pub exact_unordered: Option<String>,
}

const HYPERPLANE_LIST_LIMIT: u64 = 4096;
const EXACT_COUNT_BUDGET: u64 = 2_000_000;

pub fn factorization_bound_main_terms(n: u64, d: u64) -> Result<MainTermsReport> {
    if d < 2 || n < d || !n.is_multiple_of(d) {
        return Err(Error::precondition(format!(
            "need 2 <= d <= n with d | n, got n={n}, d={d}"
        )));
    }
    let t = binomial(n - 1, d - 1);
    let d1_fact = factorial(d - 1);
    let t_small = t.to_u64().filter(|&t| t <= HYPERPLANE_LIST_LIMIT);
    let hyperplane_ones = match t_small {
        Some(t) => (0..t).map(|i| ((t - i) * &d1_fact).to_string()).collect(),
        None => Vec::new(),
    };
    let (nf, df) = (n as f64, d as f64);
    let ln_exponent = df * nf.ln() - ln_factorial(d);
    let exponent = ln_exponent.exp();
    let m = mu(n, d)?;
    let ln_n_d1 = (df - 1.0) * nf.ln();

    let mut terms = vec![
        MainTerm::new(
            "trivial_factorization_bound",
            LogValue::from_ln(exponent * (ln_n_d1 - ln_factorial(d - 1))),
        ),
        MainTerm::new(
            "factorization_bound",
            LogValue::from_ln(exponent * (ln_n_d1 - m.per_vertex_ln() - df)),
        ),
    ];
    match d {
        2 => {
            let half_sq = nf * nf / 2.0;
            terms.push(MainTerm::new(
                "complete_graph_lower",
                LogValue::from_ln(half_sq * (nf.ln() - 4f64.ln() - 2.0)),
            ));
            terms.push(MainTerm::new(
                "complete_graph_upper",
                LogValue::from_ln(half_sq * (nf.ln() - 2.0)),
            ));
        }
        3 => terms.push(MainTerm::new(
            "corollary_d3",
            LogValue::from_ln(exponent * (3f64.ln() + 2.0 * nf.ln() - 1.5 * 2f64.ln() - 3.0)),
        )),
        _ => terms.push(MainTerm::new(
            "corollary_d4_plus",
            LogValue::from_ln(
                exponent * (df * (df.ln() - 1.0) + ln_n_d1 - (2.0 - 1.0 / df) * ln_factorial(d)),
            ),
        )),
    }
    let r0 = (&t * &d1_fact).to_u64();
    if let Some(r0) = r0 {
        let counts = vec![r0; n as usize];
        terms.push(MainTerm::new(
            "permanent_main_term",
            crate::permanent::asym_main_term_from_counts(d as usize, n as usize, &counts),
        ));
    }

    let (exact_ordered, exact_unordered) = small_exact_counts(n, d);
    Ok(MainTermsReport {
        n,
        d,
        certified: false,
        factors_per_factorization: t.to_string(),
        hyperplane_ones,
        exponent: format_exponent(n, d),
        terms,
        exact_ordered,
        exact_unordered,
    })
}

fn format_exponent(n: u64, d: u64) -> String {
    let num = BigUint::from(n).pow(d as u32);
    let den = factorial(d);
    let g = num.gcd(&den);
    let (num, den) = (num / &g, den / g);
    if den.is_one() {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

fn small_exact_counts(n: u64, d: u64) -> (Option<String>, Option<String>) {
    if binomial(n, d) > BigUint::from(40u32) {
        return (None, None);
    }
    let Ok(g) = Hypergraph::complete(n as usize, d as usize) else {
        return (None, None);
    };
    let cfg = SearchConfig::single_threaded().with_budget(EXACT_COUNT_BUDGET);
    match count_factorizations(&g, &cfg) {
        Ok(c) => (Some(c.ordered.to_string()), Some(c.unordered.to_string())),
        Err(_) => (None, None),
    }
}
