//! Named distance-regular families and their intersection arrays.
//!
//! Generators are parameterized exactly where the underlying family is:
//! cycles by vertex count, hypercubes by dimension, Johnson graphs by
//! `(n, d)`, the classical-parameter construction by `(d, q, alpha, beta)`,
//! and so on. Every generated array goes through full validation, so a
//! generator bug or an infeasible parameter choice surfaces as a typed
//! error instead of a bad table.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intersection::{ArrayError, IntersectionArray};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    Cycle,
    Complete,
    Hypercube,
    Johnson,
    GenOctagon,
    IncidencePg,
    Hadamard,
    Classical,
    DualPolarB,
    M22,
    GenDodecagon,
    Family7,
    BiggsSmith,
    Foster,
}

impl Family {
    pub const ALL: [Family; 14] = [
        Family::Cycle,
        Family::Complete,
        Family::Hypercube,
        Family::Johnson,
        Family::GenOctagon,
        Family::IncidencePg,
        Family::Hadamard,
        Family::Classical,
        Family::DualPolarB,
        Family::M22,
        Family::GenDodecagon,
        Family::Family7,
        Family::BiggsSmith,
        Family::Foster,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Hypercube => "hypercube",
            Family::Johnson => "johnson",
            Family::GenOctagon => "gen_octagon",
            Family::IncidencePg => "incidence_pg",
            Family::Hadamard => "hadamard",
            Family::Classical => "classical",
            Family::DualPolarB => "dual_polar_b",
            Family::M22 => "m22",
            Family::GenDodecagon => "gen_dodecagon",
            Family::Family7 => "family7",
            Family::BiggsSmith => "biggs_smith",
            Family::Foster => "foster",
        }
    }

    /// Whether [`crate::graph::build_graph`] can realize the family as an
    /// explicit vertex-level graph.
    pub fn has_explicit_construction(self) -> bool {
        matches!(
            self,
            Family::Cycle | Family::Complete | Family::Hypercube | Family::Johnson
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_owned()))
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let name = String::deserialize(deserializer)?;
        name.parse().map_err(serde::de::Error::custom)
    }
}

/// One family plus its named integer parameters. The JSON form is
/// `{"family":"johnson","params":{"n":5,"d":2}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    #[serde(default)]
    pub params: BTreeMap<String, i64>,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        FamilySpec {
            family,
            params: BTreeMap::new(),
        }
    }

    pub fn with(family: Family, params: &[(&str, i64)]) -> Self {
        FamilySpec {
            family,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if !self.params.is_empty() {
            let parts: Vec<String> = self
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("{family}: missing parameter {name:?}")]
    MissingParam {
        family: &'static str,
        name: &'static str,
    },
    #[error("{family}: unknown parameter {name:?}")]
    UnknownParam { family: &'static str, name: String },
    #[error("{family}: parameter out of domain: {detail}")]
    ParamOutOfDomain {
        family: &'static str,
        detail: String,
    },
    #[error("{family}: generated array failed validation: {source}")]
    ValidationFailed {
        family: &'static str,
        #[source]
        source: ArrayError,
    },
}

/// Pulls named parameters out of a spec and rejects leftovers.
struct Params<'a> {
    family: &'static str,
    spec: &'a FamilySpec,
    used: Vec<&'static str>,
}

impl<'a> Params<'a> {
    fn new(spec: &'a FamilySpec) -> Self {
        Params {
            family: spec.family.name(),
            spec,
            used: Vec::new(),
        }
    }

    fn get(&mut self, name: &'static str) -> Result<i64, FamilyError> {
        self.used.push(name);
        self.spec
            .params
            .get(name)
            .copied()
            .ok_or(FamilyError::MissingParam {
                family: self.family,
                name,
            })
    }

    fn finish(self) -> Result<(), FamilyError> {
        for key in self.spec.params.keys() {
            if !self.used.contains(&key.as_str()) {
                return Err(FamilyError::UnknownParam {
                    family: self.family,
                    name: key.clone(),
                });
            }
        }
        Ok(())
    }
}

fn domain_err(family: &'static str, detail: impl Into<String>) -> FamilyError {
    FamilyError::ParamOutOfDomain {
        family,
        detail: detail.into(),
    }
}

/// Memory guard on generated array length; beyond this the table itself
/// would be unusable anyway.
const MAX_DIAMETER: i64 = 1_000_000;

fn check_diameter(family: &'static str, d: i64) -> Result<(), FamilyError> {
    if d > MAX_DIAMETER {
        return Err(domain_err(
            family,
            format!("diameter {d} exceeds the {MAX_DIAMETER} cap"),
        ));
    }
    Ok(())
}

fn validate(
    family: &'static str,
    b: Vec<BigInt>,
    c: Vec<BigInt>,
) -> Result<IntersectionArray, FamilyError> {
    IntersectionArray::from_bigints(b, c)
        .map_err(|source| FamilyError::ValidationFailed { family, source })
}

/// Builds the validated intersection array for a family instance.
///
/// ```
/// use drg_core::{family_array, Family, FamilySpec};
///
/// let spec = FamilySpec::with(Family::Johnson, &[("n", 4), ("d", 2)]);
/// assert_eq!(family_array(&spec)?.to_string(), "{4,1;1,4}");
/// # Ok::<(), drg_core::FamilyError>(())
/// ```
pub fn family_array(spec: &FamilySpec) -> Result<IntersectionArray, FamilyError> {
    let mut p = Params::new(spec);
    let fam = spec.family.name();
    let arr = match spec.family {
        Family::Cycle => {
            let n = p.get("n")?;
            if n < 3 {
                return Err(domain_err(fam, format!("need n >= 3 vertices, got {n}")));
            }
            check_diameter(fam, n / 2)?;
            let m = (n / 2) as usize;
            let mut b = vec![BigInt::one(); m];
            let mut c = vec![BigInt::one(); m];
            b[0] = BigInt::from(2);
            if n % 2 == 0 {
                c[m - 1] = BigInt::from(2);
            }
            validate(fam, b, c)?
        }
        Family::Complete => {
            let n = p.get("n")?;
            if n < 2 {
                return Err(domain_err(fam, format!("need n >= 2 vertices, got {n}")));
            }
            validate(fam, vec![BigInt::from(n - 1)], vec![BigInt::one()])?
        }
        Family::Hypercube => {
            let d = p.get("d")?;
            if d < 1 {
                return Err(domain_err(fam, format!("need dimension d >= 1, got {d}")));
            }
            check_diameter(fam, d)?;
            let b = (0..d).map(|i| BigInt::from(d - i)).collect();
            let c = (1..=d).map(BigInt::from).collect();
            validate(fam, b, c)?
        }
        Family::Johnson => {
            let n = p.get("n")?;
            let d = p.get("d")?;
            if n < 2 || d < 1 || d > n / 2 {
                return Err(domain_err(
                    fam,
                    format!("need n >= 2 and 1 <= d <= n/2, got n={n} d={d}"),
                ));
            }
            check_diameter(fam, d)?;
            let b = (0..d)
                .map(|i| BigInt::from(d - i) * BigInt::from(n - d - i))
                .collect();
            let c = (1..=d).map(|i| BigInt::from(i) * BigInt::from(i)).collect();
            validate(fam, b, c)?
        }
        Family::GenOctagon => {
            let s = p.get("s")?;
            if !(2..=4).contains(&s) {
                return Err(domain_err(
                    fam,
                    format!("s must be one of 2, 3, 4; got {s}"),
                ));
            }
            let s = BigInt::from(s);
            validate(
                fam,
                vec![2 * &s, s.clone(), s.clone(), s.clone()],
                vec![BigInt::one(), BigInt::one(), BigInt::one(), BigInt::from(2)],
            )?
        }
        Family::IncidencePg => {
            let l = p.get("l")?;
            if ![4, 5, 7, 8].contains(&l) {
                return Err(domain_err(
                    fam,
                    format!("l must be one of 4, 5, 7, 8; got {l}"),
                ));
            }
            let l = BigInt::from(l);
            validate(
                fam,
                vec![l.clone(), &l - 1, &l - 1, BigInt::one()],
                vec![BigInt::one(), BigInt::one(), &l - 1, l.clone()],
            )?
        }
        Family::Hadamard => {
            let g = p.get("gamma")?;
            if g < 1 {
                return Err(domain_err(fam, format!("need gamma >= 1, got {g}")));
            }
            let g = BigInt::from(g);
            validate(
                fam,
                vec![4 * &g, 4 * &g - 1, 2 * &g, BigInt::one()],
                vec![BigInt::one(), 2 * &g, 4 * &g - 1, 4 * &g],
            )?
        }
        Family::Classical => {
            let d = p.get("d")?;
            let q = p.get("q")?;
            let alpha = p.get("alpha")?;
            let beta = p.get("beta")?;
            if d < 1 {
                return Err(domain_err(fam, format!("need diameter d >= 1, got {d}")));
            }
            if d > 1024 {
                return Err(domain_err(
                    fam,
                    format!("diameter {d} exceeds the 1024 cap"),
                ));
            }
            classical_array(
                fam,
                d as usize,
                &BigInt::from(q),
                &BigInt::from(alpha),
                &BigInt::from(beta),
            )?
        }
        Family::DualPolarB => {
            let q = p.get("q")?;
            let d = p.get("d")?;
            if !(3..=1024).contains(&d) {
                return Err(domain_err(fam, format!("need 3 <= d <= 1024, got {d}")));
            }
            if !(2..=1_000_000).contains(&q) || !is_prime_power(q as u64) {
                return Err(domain_err(
                    fam,
                    format!("q must be a prime power in 2..=10^6, got {q}"),
                ));
            }
            let qb = BigInt::from(q);
            let denom = &qb - 1;
            let b = (0..d)
                .map(|i| qb.pow(i as u32 + 1) * (qb.pow((d - i) as u32) - 1) / &denom)
                .collect();
            let c = (1..=d).map(|i| (qb.pow(i as u32) - 1) / &denom).collect();
            validate(fam, b, c)?
        }
        Family::M22 => validate(
            fam,
            [7, 6, 4, 4].map(BigInt::from).to_vec(),
            [1, 1, 1, 6].map(BigInt::from).to_vec(),
        )?,
        Family::GenDodecagon => {
            let s = p.get("s")?;
            if s < 1 {
                return Err(domain_err(fam, format!("need s >= 1, got {s}")));
            }
            let s = BigInt::from(s);
            let mut b = vec![s.clone(); 6];
            b[0] = 2 * &s;
            let mut c = vec![BigInt::one(); 6];
            c[5] = BigInt::from(2);
            validate(fam, b, c)?
        }
        Family::Family7 => {
            let g = p.get("gamma")?;
            if g < 1 {
                return Err(domain_err(fam, format!("need gamma >= 1, got {g}")));
            }
            let g = BigInt::from(g);
            let l: BigInt = &g * (&g * &g + 3 * &g + 1);
            let c: BigInt = &g * (&g + 1);
            validate(
                fam,
                vec![l.clone(), &l - 1, &l - &c, c.clone(), BigInt::one()],
                vec![BigInt::one(), c.clone(), &l - &c, &l - 1, l.clone()],
            )?
        }
        Family::BiggsSmith => validate(
            fam,
            [3, 2, 2, 2, 1, 1, 1].map(BigInt::from).to_vec(),
            [1, 1, 1, 1, 1, 1, 3].map(BigInt::from).to_vec(),
        )?,
        Family::Foster => validate(
            fam,
            [3, 2, 2, 2, 2, 1, 1, 1].map(BigInt::from).to_vec(),
            [1, 1, 1, 1, 2, 2, 2, 3].map(BigInt::from).to_vec(),
        )?,
    };
    p.finish()?;
    Ok(arr)
}

/// `[j; 1] = 1 + q + ... + q^{j-1}` (so `[j; 1] = j` at `q = 1`).
fn gaussian_binomial(j: usize, q: &BigInt) -> BigInt {
    let mut total = BigInt::zero();
    let mut power = BigInt::one();
    for _ in 0..j {
        total += &power;
        power *= q;
    }
    total
}

fn classical_array(
    fam: &'static str,
    d: usize,
    q: &BigInt,
    alpha: &BigInt,
    beta: &BigInt,
) -> Result<IntersectionArray, FamilyError> {
    let gd = gaussian_binomial(d, q);
    let mut b = Vec::with_capacity(d);
    for i in 0..d {
        let gi = gaussian_binomial(i, q);
        let bi = (&gd - &gi) * (beta - alpha * &gi);
        if !bi.is_positive() {
            return Err(domain_err(fam, format!("b_{i} = {bi} is not positive")));
        }
        b.push(bi);
    }
    let mut c = Vec::with_capacity(d);
    for i in 1..=d {
        let gi = gaussian_binomial(i, q);
        let gim1 = gaussian_binomial(i - 1, q);
        let ci = &gi * (BigInt::one() + alpha * &gim1);
        if !ci.is_positive() {
            return Err(domain_err(fam, format!("c_{i} = {ci} is not positive")));
        }
        c.push(ci);
    }
    validate(fam, b, c)
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 0;
    let mut f = 2;
    while f * f <= q {
        if q.is_multiple_of(f) {
            p = f;
            break;
        }
        f += 1;
    }
    if p == 0 {
        return true; // q itself is prime
    }
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    rest == 1
}

/// Exact `R^(l) = l(N-l)/N` for the even cycle `C_N`; the reference oracle
/// cross-checking the cycle recursion, and the finite truncation of the
/// infinite-line limit `R^(l) -> l`.
pub fn cycle_closed_form(n: u64, l: u64) -> Result<Rational, FamilyError> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(domain_err("cycle", format!("need even n >= 4, got {n}")));
    }
    if l < 1 || l > n / 2 {
        return Err(domain_err(
            "cycle",
            format!("need 1 <= l <= n/2 = {}, got {l}", n / 2),
        ));
    }
    Ok(Rational::new(
        BigInt::from(l) * BigInt::from(n - l),
        BigInt::from(n),
    ))
}

/// One entry of the family listing: parameter names with their domains and
/// a short description.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyTemplate {
    pub name: &'static str,
    pub params: Vec<ParamDomain>,
    pub description: &'static str,
    pub order: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamDomain {
    pub name: &'static str,
    pub domain: &'static str,
}

fn pd(name: &'static str, domain: &'static str) -> ParamDomain {
    ParamDomain { name, domain }
}

/// Enumerates every supported family with parameter domains and order.
pub fn list_families() -> Vec<FamilyTemplate> {
    vec![
        FamilyTemplate {
            name: "cycle",
            params: vec![pd("n", "n >= 3")],
            description: "cycle C_n; array {2,1,...,1;1,...,1,(2 if n even)}",
            order: "N = n",
        },
        FamilyTemplate {
            name: "complete",
            params: vec![pd("n", "n >= 2")],
            description: "complete graph K_n; array {n-1;1}",
            order: "N = n",
        },
        FamilyTemplate {
            name: "hypercube",
            params: vec![pd("d", "d >= 1")],
            description: "d-dimensional Hamming cube; b_i = d-i, c_i = i",
            order: "N = 2^d",
        },
        FamilyTemplate {
            name: "johnson",
            params: vec![pd("n", "n >= 2"), pd("d", "1 <= d <= n/2")],
            description: "Johnson graph J(n,d); b_i = (d-i)(n-d-i), c_i = i^2",
            order: "N = C(n,d)",
        },
        FamilyTemplate {
            name: "gen_octagon",
            params: vec![pd("s", "s in {2,3,4}")],
            description: "collinearity graph of a generalized octagon of order (s,1); array {2s,s,s,s;1,1,1,2}",
            order: "N = s^4+2s^3+2s^2+2s+1",
        },
        FamilyTemplate {
            name: "incidence_pg",
            params: vec![pd("l", "l in {4,5,7,8}")],
            description: "incidence graph of a partial geometry pg(l-1,l-1,l-1); array {l,l-1,l-1,1;1,1,l-1,l}",
            order: "N = 2l^2",
        },
        FamilyTemplate {
            name: "hadamard",
            params: vec![pd("gamma", "gamma >= 1")],
            description: "Hadamard graph; array {4g,4g-1,2g,1;1,2g,4g-1,4g}",
            order: "N = 16*gamma",
        },
        FamilyTemplate {
            name: "classical",
            params: vec![
                pd("d", "d >= 1"),
                pd("q", "any integer"),
                pd("alpha", "any integer"),
                pd("beta", "any integer"),
            ],
            description: "classical parameters (d,q,alpha,beta) through Gaussian binomials [j;1] = 1+q+...+q^{j-1}; all resulting b_i, c_i must be positive integers",
            order: "N = sum of derived valencies",
        },
        FamilyTemplate {
            name: "dual_polar_b",
            params: vec![pd("q", "prime power, 2 <= q <= 10^6"), pd("d", "d >= 3")],
            description: "dual polar graph B_d(q); classical parameters with alpha=0, beta=q",
            order: "N = prod_{i=1..d} (q^i + 1)",
        },
        FamilyTemplate {
            name: "m22",
            params: vec![],
            description: "M_22 graph; array {7,6,4,4;1,1,1,6}",
            order: "N = 330",
        },
        FamilyTemplate {
            name: "gen_dodecagon",
            params: vec![pd("s", "s >= 1")],
            description: "collinearity graph of a generalized dodecagon of order (s,1); array {2s,s,s,s,s,s;1,1,1,1,1,2}",
            order: "N = s^6+2(s^5+s^4+s^3+s^2+s)+1",
        },
        FamilyTemplate {
            name: "family7",
            params: vec![pd("gamma", "gamma >= 1")],
            description: "diameter-5 family with l = g(g^2+3g+1), c = g(g+1); array {l,l-1,l-c,c,1;1,c,l-c,l-1,l}",
            order: "N = 2(1 + l + l(l-1)/c)",
        },
        FamilyTemplate {
            name: "biggs_smith",
            params: vec![],
            description: "Biggs-Smith graph; array {3,2,2,2,1,1,1;1,1,1,1,1,1,3}",
            order: "N = 102",
        },
        FamilyTemplate {
            name: "foster",
            params: vec![],
            description: "Foster graph; array {3,2,2,2,2,1,1,1;1,1,1,1,2,2,2,3}",
            order: "N = 90",
        },
    ]
}

/// The canonical set of arrays the cross-check suites run over: every fixed
/// sporadic array plus the parameterized families at their verified sizes.
pub fn verification_catalog() -> Vec<(String, IntersectionArray)> {
    let mut out = Vec::new();
    let mut push = |spec: FamilySpec| {
        let arr = family_array(&spec).expect("catalog entries are valid");
        out.push((spec.to_string(), arr));
    };
    for n in 3..=20 {
        push(FamilySpec::with(Family::Cycle, &[("n", n)]));
    }
    for d in 2..=10 {
        push(FamilySpec::with(Family::Hypercube, &[("d", d)]));
    }
    for (n, d) in [(4, 2), (5, 2), (6, 2), (7, 2), (6, 3), (7, 3), (8, 4)] {
        push(FamilySpec::with(Family::Johnson, &[("n", n), ("d", d)]));
    }
    for n in 2..=10 {
        push(FamilySpec::with(Family::Complete, &[("n", n)]));
    }
    for s in 2..=4 {
        push(FamilySpec::with(Family::GenOctagon, &[("s", s)]));
    }
    for l in [4, 5, 7, 8] {
        push(FamilySpec::with(Family::IncidencePg, &[("l", l)]));
    }
    for g in 1..=3 {
        push(FamilySpec::with(Family::Hadamard, &[("gamma", g)]));
    }
    push(FamilySpec::with(Family::DualPolarB, &[("q", 2), ("d", 4)]));
    push(FamilySpec::with(Family::DualPolarB, &[("q", 3), ("d", 3)]));
    push(FamilySpec::with(
        Family::Classical,
        &[("d", 4), ("q", 2), ("alpha", 0), ("beta", 2)],
    ));
    push(FamilySpec::new(Family::M22));
    for s in 2..=3 {
        push(FamilySpec::with(Family::GenDodecagon, &[("s", s)]));
    }
    for g in 1..=2 {
        push(FamilySpec::with(Family::Family7, &[("gamma", g)]));
    }
    push(FamilySpec::new(Family::BiggsSmith));
    push(FamilySpec::new(Family::Foster));
    out
}
