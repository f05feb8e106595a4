//! Text format for presentations and coactions.
//!
//! ```text
//! algebra GLq2
//! generators x11 x12 x21 x22 t
//! order x11 < x12 < x21 < x22 < t
//! relation x12*x11 - q*x11*x12
//! star x11 -> x22*t
//! delta x11 -> x11 (x) x11 + x12 (x) x21
//! counit x11 -> 1
//! antipode x11 -> x22*t
//! ```
//!
//! `relation e` means `e = 0`. `order` is optional and defaults to the
//! `generators` line. `delta`, `counit` and `antipode` are optional and
//! must be given for every generator or not at all. Lines starting with
//! `#` are comments.
//!
//! ```text
//! coaction GLq2m2 over GLq2
//! alpha z11 -> x11 (x) z11 + x12 (x) z21
//! ```
//!
//! In tensor expressions a summand is `exprA (x) exprZ`; a right leg that
//! is itself a sum needs parentheses.

use std::sync::Arc;

use super::{CoactionData, HopfData, Presentation, TensorAlgebra};
use crate::error::{Error, Result};
use crate::ncpoly::{Alphabet, NCPoly, StarMap, TensorPoly};
use crate::parse::{parse_expr, parse_scalar};
use crate::rewrite::CompletionConfig;
use crate::scalars::CScalar;

#[derive(Clone, Debug)]
pub struct PresentationFile {
    pub presentation: Arc<Presentation>,
    pub hopf: Option<Arc<HopfData>>,
}

#[derive(Clone, Debug)]
pub struct CoactionFile {
    pub total: String,
    pub base: String,
    alpha: Vec<Located>,
}

#[derive(Clone, Debug)]
struct Located {
    key: String,
    text: String,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, col, msg: msg.into() }
}

/// Moves an error from expression coordinates to file coordinates.
fn relocate(e: Error, line: usize, col: usize) -> Error {
    match e {
        Error::Syntax { line: 1, col: c, msg } => Error::Syntax { line, col: col + c - 1, msg },
        Error::UnknownGenerator { name, line: 1, col: c } => Error::UnknownGenerator { name, line, col: col + c - 1 },
        other => other,
    }
}

/// Splits `keyword rest`, returning the rest and its 1-based column.
fn split_keyword(line: &str) -> (&str, &str, usize) {
    let trimmed = line.trim_start();
    let lead = line.len() - trimmed.len();
    match trimmed.find(char::is_whitespace) {
        Some(k) => {
            let rest = &trimmed[k..];
            let rest_trim = rest.trim_start();
            (&trimmed[..k], rest_trim.trim_end(), lead + k + (rest.len() - rest_trim.len()) + 1)
        }
        None => (trimmed, "", line.len() + 1),
    }
}

/// `g -> text`, with the column of `text`.
fn split_arrow(rest: &str, col: usize, line: usize) -> Result<Located> {
    let k = rest.find("->").ok_or_else(|| syntax(line, col, "expected `->`"))?;
    let key = rest[..k].trim().to_string();
    let after = &rest[k + 2..];
    let text = after.trim_start();
    let tcol = col + k + 2 + (after.len() - text.len());
    Ok(Located { key, text: text.trim_end().to_string(), line, col: tcol })
}

pub fn parse_presentation_file(src: &str, config: CompletionConfig) -> Result<PresentationFile> {
    let mut name = None;
    let mut generators: Option<(Vec<String>, usize)> = None;
    let mut order: Option<(Vec<String>, usize)> = None;
    let mut relations = Vec::new();
    let mut stars = Vec::new();
    let mut deltas = Vec::new();
    let mut counits = Vec::new();
    let mut antipodes = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let (kw, rest, col) = split_keyword(raw);
        match kw {
            "algebra" => name = Some(rest.to_string()),
            "generators" => generators = Some((rest.split_whitespace().map(str::to_string).collect(), line)),
            "order" => order = Some((rest.split('<').map(|s| s.trim().to_string()).collect(), line)),
            "relation" => relations.push(Located { key: String::new(), text: rest.into(), line, col }),
            "star" => stars.push(split_arrow(rest, col, line)?),
            "delta" => deltas.push(split_arrow(rest, col, line)?),
            "counit" => counits.push(split_arrow(rest, col, line)?),
            "antipode" => antipodes.push(split_arrow(rest, col, line)?),
            other => return Err(syntax(line, 1, format!("unknown keyword `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| syntax(1, 1, "missing `algebra` line"))?;
    let (gens, gline) = generators.ok_or_else(|| syntax(1, 1, "missing `generators` line"))?;
    let names = match order {
        Some((ord, oline)) => {
            let mut a = ord.clone();
            let mut b = gens.clone();
            a.sort();
            b.sort();
            if a != b {
                return Err(syntax(oline, 1, "`order` must list exactly the generators"));
            }
            ord
        }
        None => gens,
    };
    let alphabet = Alphabet::new(&names).map_err(|e| match e {
        Error::Invalid(m) => syntax(gline, 1, m),
        e => e,
    })?;
    let expr = |l: &Located| parse_expr(&l.text, &alphabet).map_err(|e| relocate(e, l.line, l.col));
    let rels = relations.iter().map(expr).collect::<Result<Vec<_>>>()?;
    let per_gen = |items: &[Located], what: &str| -> Result<Vec<Option<Located>>> {
        let mut out = vec![None; alphabet.len()];
        for it in items {
            let g = alphabet.index(&it.key).ok_or_else(|| Error::UnknownGenerator {
                name: it.key.clone(),
                line: it.line,
                col: 1,
            })?;
            if out[g].is_some() {
                return Err(syntax(it.line, 1, format!("second {what} for `{}`", it.key)));
            }
            out[g] = Some(it.clone());
        }
        Ok(out)
    };
    let star = if stars.is_empty() {
        None
    } else {
        let slots = per_gen(&stars, "star")?;
        Some(StarMap::new(slots.iter().map(|s| s.as_ref().map(expr).transpose()).collect::<Result<Vec<_>>>()?))
    };
    let p = Arc::new(Presentation::new(name, alphabet.clone(), rels, star, config)?);
    if deltas.is_empty() && counits.is_empty() && antipodes.is_empty() {
        return Ok(PresentationFile { presentation: p, hopf: None });
    }
    let need_all = |slots: Vec<Option<Located>>, what: &str| -> Result<Vec<Located>> {
        slots
            .into_iter()
            .enumerate()
            .map(|(g, s)| s.ok_or_else(|| Error::Invalid(format!("missing {what} for `{}`", alphabet.name(g)))))
            .collect()
    };
    let t = TensorAlgebra::new(p.clone(), p.clone());
    let delta = need_all(per_gen(&deltas, "delta")?, "delta")?
        .iter()
        .map(|l| t.parse(&l.text).map_err(|e| relocate(e, l.line, l.col)))
        .collect::<Result<Vec<TensorPoly>>>()?;
    let counit = need_all(per_gen(&counits, "counit")?, "counit")?
        .iter()
        .map(|l| parse_scalar(&l.text).map_err(|e| relocate(e, l.line, l.col)))
        .collect::<Result<Vec<CScalar>>>()?;
    let antipode = need_all(per_gen(&antipodes, "antipode")?, "antipode")?
        .iter()
        .map(|l| p.parse(&l.text).map_err(|e| relocate(e, l.line, l.col)))
        .collect::<Result<Vec<NCPoly>>>()?;
    let hopf = Arc::new(HopfData::new(p.clone(), delta, counit, antipode));
    Ok(PresentationFile { presentation: p, hopf: Some(hopf) })
}

pub fn parse_coaction_file(src: &str) -> Result<CoactionFile> {
    let mut header = None;
    let mut alpha = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let (kw, rest, col) = split_keyword(raw);
        match kw {
            "coaction" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                match parts.as_slice() {
                    [z, "over", a] => header = Some((z.to_string(), a.to_string())),
                    _ => return Err(syntax(line, col, "expected `coaction <Z> over <A>`")),
                }
            }
            "alpha" => alpha.push(split_arrow(rest, col, line)?),
            other => return Err(syntax(line, 1, format!("unknown keyword `{other}`"))),
        }
    }
    let (total, base) = header.ok_or_else(|| syntax(1, 1, "missing `coaction` line"))?;
    Ok(CoactionFile { total, base, alpha })
}

impl CoactionFile {
    /// Resolves the `alpha` lines against the named algebras.
    pub fn build(&self, hopf: Arc<HopfData>, total: Arc<Presentation>) -> Result<CoactionData> {
        let t = TensorAlgebra::new(hopf.algebra.clone(), total.clone());
        let mut images: Vec<Option<TensorPoly>> = vec![None; total.ngens()];
        for l in &self.alpha {
            let g = total.alphabet.index(&l.key).ok_or_else(|| Error::UnknownGenerator {
                name: l.key.clone(),
                line: l.line,
                col: 1,
            })?;
            images[g] = Some(t.parse(&l.text).map_err(|e| relocate(e, l.line, l.col))?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(g, i)| i.ok_or_else(|| Error::Invalid(format!("missing alpha for `{}`", total.alphabet.name(g)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(CoactionData::new(hopf, total, images))
    }
}
