//! Verification suites run by `qgal verify`, plus the `haar` and `cotensor`
//! commands.

use std::sync::Arc;

use qgal::characters::{spectrum, star_spectrum_note, Spectrum, DEFAULT_DEGREE_CAP};
use qgal::comodules::{conjugate, tensor, Corep};
use qgal::cotensor::{
    compute_cotensor, conjugation_map, cotensor_inner, in_cotensor, monoidal_constraint, verify_biunitarity,
    CotensorElement,
};
use qgal::galois::{matrix_inverse_identity, regular_coaction, verify_galois, GaloisWitness};
use qgal::haar::{
    gram_positivity, haar_on_extension, haar_on_extension_with, haar_on_hopf, specialized_extremes, verify_invariance,
    LinearFunctional, GRAM_TOLERANCE,
};
use qgal::ncpoly::NCPoly;
use qgal::presentations::{
    f_matrix, findim_rep_obstruction, verify_coaction, verify_hopf, verify_star, CoactionData, Presentation,
};
use qgal::report::{Report, Status};
use qgal::rewrite::CompletionConfig;
use qgal::scalars::CScalar;
use qgal::{Error, Result};
use serde_json::{json, Map, Value};

use crate::target::{degree_cap_override, Target};

pub const SUITES: &[&str] = &["hopf", "star", "coaction", "galois", "haar", "biunitarity", "cotensor", "spectrum"];

pub struct Settings {
    pub degree: usize,
    pub q_samples: Vec<f64>,
    pub comodule: String,
}

/// What a command produced: the report, extra JSON fields and text shown
/// before the report.
pub struct Outcome {
    pub report: Report,
    pub extra: Map<String, Value>,
    pub text: String,
}

impl Outcome {
    fn plain(report: Report) -> Self {
        Outcome { report, extra: Map::new(), text: String::new() }
    }
}

pub fn verify(t: &Target, suite: &str, s: &Settings) -> Result<Outcome> {
    if suite != "all" {
        return match run(t, suite, s)? {
            Some(r) => Ok(Outcome::plain(r)),
            None => Err(Error::Invalid(format!("suite `{suite}` does not apply to {}", t.name))),
        };
    }
    let mut rep = Report::new(format!("verify {} (all)", t.name));
    for suite in SUITES {
        match run(t, suite, s)? {
            Some(r) => rep.absorb(r),
            None => rep.note(format!("{suite}: not applicable")),
        }
    }
    Ok(Outcome::plain(rep.finish()))
}

fn run(t: &Target, suite: &str, s: &Settings) -> Result<Option<Report>> {
    Ok(match suite {
        "hopf" => t.hopf.as_ref().or(t.coaction.as_ref().map(|c| &c.hopf)).map(|h| verify_hopf(h)),
        "star" => t.presentation.has_star().then(|| verify_star(&t.presentation)),
        "coaction" => t.coaction.as_ref().map(|c| verify_coaction(c)),
        "galois" => galois(t, s)?,
        "haar" => match extension(t) {
            Some(c) => Some(haar_suite(&c, t.hopf.is_some(), s)?.0),
            None => None,
        },
        "biunitarity" => match block(t) {
            Some(b) => Some(verify_biunitarity(&t.presentation, &b)?),
            None => None,
        },
        "cotensor" => match extension(t) {
            Some(c) => Some(cotensor_report(&c, s)?.report),
            None => None,
        },
        "spectrum" => Some(spectrum_suite(t)),
        other => return Err(Error::Invalid(format!("unknown suite `{other}`"))),
    })
}

/// The coaction of the target, or the regular coaction of a Hopf target.
fn extension(t: &Target) -> Option<Arc<CoactionData>> {
    t.coaction.clone().or_else(|| t.hopf.clone().map(|h| Arc::new(regular_coaction(h))))
}

fn galois(t: &Target, s: &Settings) -> Result<Option<Report>> {
    let Some(c) = extension(t) else { return Ok(None) };
    let mut rep = Report::new(format!("galois {}", t.name));
    let witness = if t.coaction.is_none() {
        Some(GaloisWitness::hopf(&c)?)
    } else if t.from_catalog && matches!(t.name.as_str(), "GLq2m2" | "Uq2m2") {
        rep.absorb(matrix_inverse_identity(&c.total)?);
        Some(GaloisWitness::glq2m2(&c, &t.params)?)
    } else if t.from_catalog && t.name == "AuFG" {
        let f = t.params.f.clone().unwrap_or_else(|| f_matrix(1));
        let g = t.params.g.clone().unwrap_or_else(|| f_matrix(-1));
        let config = CompletionConfig { degree: t.params.completion_degree, rule_cap: t.params.rule_cap };
        Some(GaloisWitness::aufg(&c, &f, &g, config)?)
    } else {
        None
    };
    match witness {
        Some(w) => rep.absorb(verify_galois(&c, &w, s.degree)),
        None => rep.push("explicit inverse of the Galois map", Status::Undecided, "no witness known for this target"),
    }
    Ok(Some(rep.finish()))
}

/// `J` on the base and `mu` on the total algebra, both to degree `3d`.
pub fn measures(c: &CoactionData, d: usize) -> Result<(LinearFunctional, LinearFunctional)> {
    let j = haar_on_hopf(&c.hopf, 3 * d)?;
    let mu = haar_on_extension(c, &j, 3 * d)?;
    Ok((j, mu))
}

/// Largest word basis the Haar solver is asked to handle.
const WORD_BUDGET: usize = 3000;

/// Why the Haar functional to degree `3d` is out of reach, if it is.
fn haar_out_of_reach(c: &CoactionData, d: usize) -> Result<Option<String>> {
    let top = 3 * d;
    for p in [&c.hopf.algebra, &c.total] {
        if p.certified_degree() < top {
            return Ok(Some(format!("{} is certified only to degree {}, {top} needed", p.name, p.certified_degree())));
        }
        for k in 1..=top {
            let n = p.basis(k)?.len();
            if n > WORD_BUDGET {
                return Ok(Some(format!("{} has {n} words of degree <= {k}, budget {WORD_BUDGET}", p.name)));
            }
        }
    }
    Ok(None)
}

fn haar_suite(c: &CoactionData, hopf_target: bool, s: &Settings) -> Result<(Report, Option<LinearFunctional>)> {
    let d = s.degree;
    let mut rep = Report::new(format!("haar {} (d = {d})", c.total.name));
    if let Some(why) = haar_out_of_reach(c, d)? {
        rep.push(format!("haar functional to degree {}", 3 * d), Status::Undecided, why);
        return Ok((rep.finish(), None));
    }
    let (j, mu) = measures(c, d)?;
    rep.check("mu(1) = 1", mu.value_word(&Default::default())?.is_one(), "");
    if !hopf_target {
        let other = haar_on_extension_with(c, &j, d, |_| CScalar::one())?;
        let mut same = true;
        let mut witness = String::new();
        for w in &other.basis {
            if other.value_word(w)? != mu.value_word(w)? {
                same = false;
                witness = c.total.show_word(w);
                break;
            }
        }
        rep.check("mu does not depend on the auxiliary functional", same, witness);
    }
    rep.absorb(verify_invariance(c, &mu, d));
    if c.total.has_star() {
        for k in 1..=d {
            rep.absorb(gram_positivity(&c.total, &mu, k, &s.q_samples)?);
        }
    }
    Ok((rep.finish(), Some(mu)))
}

pub fn haar_command(t: &Target, s: &Settings) -> Result<Outcome> {
    let c = extension(t).ok_or_else(|| Error::Invalid(format!("{} has neither Hopf nor coaction data", t.name)))?;
    for &q0 in &s.q_samples {
        if q0 == 0.0 || !q0.is_finite() {
            return Err(Error::Domain(format!("cannot specialize at q = {q0}")));
        }
    }
    let (report, mu) = haar_suite(&c, t.hopf.is_some(), s)?;
    let Some(mu) = mu else { return Ok(Outcome::plain(report)) };
    let z = &c.total;
    let label = if t.hopf.is_some() { "J" } else { "mu" };
    let mut text = String::new();
    let mut values = Map::new();
    for w in z.basis(s.degree)? {
        let v = mu.value_word(&w)?;
        text.push_str(&format!("{label}({}) = {v}\n", z.show_word(&w)));
        values.insert(z.show_word(&w), json!(v.to_string()));
    }
    let mut extra = Map::new();
    extra.insert("values".into(), Value::Object(values));
    Ok(Outcome { report, extra, text })
}

/// The fundamental block of a catalog target.
fn block(t: &Target) -> Option<Vec<Vec<NCPoly>>> {
    let p = &t.presentation;
    let grid = |prefix: &str, n: usize, m: usize| -> Vec<Vec<NCPoly>> {
        (1..=n).map(|i| (1..=m).map(|j| p.gen(&format!("{prefix}{i}{j}"))).collect()).collect()
    };
    if !t.from_catalog || !p.has_star() {
        return None;
    }
    match t.name.as_str() {
        "Uq2" => Some(grid("x", 2, 2)),
        "Uq2m2" => Some(grid("z", 2, 2)),
        "AuF" | "AuFG" => Some(grid("a", 3, 3)),
        "Onp" => Some(grid("a", t.params.n, t.params.p)),
        _ => None,
    }
}

/// The corepresentation named by `--comodule`.
fn comodule(c: &CoactionData, which: &str) -> Result<Corep> {
    let h = c.hopf.clone();
    let a = &h.algebra;
    let prefix = if a.alphabet.index("x11").is_some() { "x" } else { "a" };
    let n = (1..).take_while(|i| a.alphabet.index(&format!("{prefix}{i}1")).is_some()).count();
    let fundamental = || -> Result<Corep> {
        let rows = (1..=n).map(|i| (1..=n).map(|j| a.gen(&format!("{prefix}{i}{j}"))).collect()).collect();
        Corep::new(h.clone(), rows)
    };
    match which {
        "trivial" => Ok(Corep::trivial(h.clone())),
        "fundamental" => fundamental(),
        "conjugate" => conjugate(&fundamental()?),
        name if name.starts_with("tensor") => {
            let k: usize = name[6..].parse().map_err(|_| Error::Invalid(format!("bad comodule `{name}`")))?;
            let f = fundamental()?;
            let mut v = Corep::trivial(h.clone());
            for _ in 0..k {
                v = tensor(&v, &f)?;
            }
            Ok(v)
        }
        other => Err(Error::Invalid(format!("unknown comodule `{other}` (trivial, fundamental, conjugate, tensorK)"))),
    }
}

fn element_degree(x: &CotensorElement) -> usize {
    x.coeffs.iter().map(NCPoly::degree).max().unwrap_or(0)
}

pub fn cotensor_report(c: &CoactionData, s: &Settings) -> Result<Outcome> {
    let v = comodule(c, &s.comodule)?;
    let z = &c.total;
    let mut rep = Report::new(format!("cotensor {} [] {} ({}-dim)", s.comodule, z.name, v.dim()));
    let mut dims = Vec::new();
    let mut basis;
    let mut d = 1;
    loop {
        basis = compute_cotensor(&v, c, d)?;
        dims.push(basis.len());
        let stable = dims.len() >= 2 && dims[dims.len() - 1] == dims[dims.len() - 2];
        if d >= s.degree.max(2) && (stable || d > s.degree) {
            break;
        }
        d += 1;
    }
    let n = dims.len();
    let stable = n >= 2 && dims[n - 1] == dims[n - 2];
    rep.push(
        format!("dimension stable across d = {} and {}", d - 1, d),
        if stable { Status::Pass } else { Status::Undecided },
        format!("{dims:?}"),
    );
    for (k, x) in basis.iter().enumerate() {
        rep.check(format!("basis element {k} lies in the cotensor product"), in_cotensor(x, c), "");
    }
    if z.has_star() && c.base.has_star() {
        for (k, x) in basis.iter().enumerate() {
            let lam = conjugation_map(x, z)?;
            rep.check(format!("conjugation map sends element {k} into the conjugate"), in_cotensor(&lam, c), "");
        }
    }
    let mut extra = Map::new();
    extra.insert("dimensions".into(), json!(dims));
    extra.insert("basis".into(), json!(basis.iter().map(|x| x.show(z)).collect::<Vec<_>>()));
    let mut text = format!("dim by degree: {dims:?}\n");
    for (k, x) in basis.iter().enumerate() {
        text.push_str(&format!("e{k} = {}\n", x.show(z)));
    }
    let deg = basis.iter().map(element_degree).max().unwrap_or(0).max(1);
    let reach = if s.comodule == "fundamental" { 2 * deg } else { deg };
    let out_of_reach = if z.has_star() { haar_out_of_reach(c, reach)? } else { None };
    if let Some(why) = &out_of_reach {
        rep.push("gram matrix under the haar functional", Status::Undecided, why.clone());
    }
    if z.has_star() && out_of_reach.is_none() {
        let (_, mu) = measures(c, deg)?;
        let gram = basis
            .iter()
            .map(|x| basis.iter().map(|y| cotensor_inner(x, y, &mu, z)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let m = gram.len();
        let hermitian = (0..m).all(|i| (0..m).all(|j| gram[i][j] == gram[j][i].conj()));
        rep.check("gram matrix is conjugate-symmetric", hermitian, "");
        let identity = (0..m).all(|i| (0..m).all(|j| if i == j { gram[i][j].is_one() } else { gram[i][j].is_zero() }));
        if matches!(s.comodule.as_str(), "trivial" | "fundamental") {
            rep.check("gram matrix is the identity", identity, "");
        } else {
            rep.note(format!("gram matrix is {}the identity", if identity { "" } else { "not " }));
        }
        for &q0 in &s.q_samples {
            let (lo, hi) = specialized_extremes(&gram, q0)?;
            let ok = m == 0 || lo >= -GRAM_TOLERANCE * hi.abs().max(1.0);
            rep.check(format!("q = {q0}: gram smallest eigenvalue {lo:.3e}"), ok, "");
        }
        if s.comodule == "fundamental" && basis.len() <= 4 {
            let mu2 = measures(c, 2 * deg)?.1;
            for (a, x) in basis.iter().enumerate() {
                for (b, y) in basis.iter().enumerate() {
                    let xy = monoidal_constraint(x, y, z)?;
                    rep.check(
                        format!("e{a} (x) e{b} lies in the cotensor product of the tensor square"),
                        in_cotensor(&xy, c),
                        "",
                    );
                    let norm = cotensor_inner(&xy, &xy, &mu2, z)?;
                    rep.check(format!("|e{a} (x) e{b}|^2 = 1"), norm.is_one(), norm.to_string());
                }
            }
        }
        text.push_str("gram:\n");
        for row in &gram {
            text.push_str(&format!("  [{}]\n", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")));
        }
        extra.insert(
            "gram".into(),
            json!(gram.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()),
        );
    }
    rep.note("stability across consecutive degrees is evidence, not proof");
    Ok(Outcome { report: rep.finish(), extra, text })
}

pub fn cotensor_command(t: &Target, s: &Settings) -> Result<Outcome> {
    let c = extension(t).ok_or_else(|| Error::Invalid(format!("{} has neither Hopf nor coaction data", t.name)))?;
    cotensor_report(&c, s)
}

/// Whether the target is known to have no characters, when anything is known.
fn expected_empty(t: &Target) -> Option<bool> {
    if t.hopf.is_some() {
        return Some(false);
    }
    if !t.from_catalog {
        return None;
    }
    match t.name.as_str() {
        "GLq2m2" | "Uq2m2" => Some(true),
        "Onp" => Some(!findim_rep_obstruction(t.params.n, t.params.p)),
        _ => None,
    }
}

fn spectrum_suite(t: &Target) -> Report {
    let cap = degree_cap_override().unwrap_or(DEFAULT_DEGREE_CAP);
    let p: &Presentation = &t.presentation;
    let mut rep = Report::new(format!("spectrum {}", t.name));
    let hint = t.hopf.as_ref().map(|h| h.counit.clone());
    let expected = expected_empty(t);
    let found = match spectrum(p, cap, hint.as_deref()) {
        Ok(s) => s,
        Err(e) => {
            rep.push("groebner basis of the abelianization", Status::Undecided, e.to_string());
            return rep.finish();
        }
    };
    let (empty, witness) = match &found {
        Spectrum::Empty => (true, "1 lies in the abelianized ideal".to_string()),
        Spectrum::Point(pt) => {
            let w: Vec<String> = p.alphabet.names().iter().zip(pt).map(|(n, v)| format!("{n} -> {v}")).collect();
            (false, w.join(", "))
        }
        Spectrum::NonemptyNotEnumerated => (false, "nonempty, no point found".to_string()),
    };
    match expected {
        Some(true) => rep.check("no characters", empty, witness),
        Some(false) if hint.is_some() => {
            let is_counit = matches!(&found, Spectrum::Point(pt) if hint.as_deref() == Some(&pt[..]));
            rep.check("the counit is a character", is_counit, witness)
        }
        Some(false) => rep.check("characters exist", !empty, witness),
        None => {
            rep.check("spectrum decided", true, witness);
            rep.note(format!("spectrum {}", if empty { "empty" } else { "nonempty" }));
        }
    }
    if p.has_star() {
        for n in star_spectrum_note(p, cap, hint.as_deref()).notes {
            rep.note(n);
        }
    }
    rep.finish()
}
