//! Resolving a command-line target: a catalog name or a presentation file.

use std::path::Path;
use std::sync::Arc;

use qgal::presentations::{
    catalog, parse_coaction_file, parse_presentation_file, CatalogParams, CoactionData, HopfData, Presentation,
    CATALOG_NAMES,
};
use qgal::rewrite::CompletionConfig;
use qgal::{Error, Result};

pub struct Target {
    pub name: String,
    pub presentation: Arc<Presentation>,
    /// Hopf structure on the target itself.
    pub hopf: Option<Arc<HopfData>>,
    pub coaction: Option<Arc<CoactionData>>,
    pub params: CatalogParams,
    pub from_catalog: bool,
}

/// Completion degree for a target checked at `degree`: products of stars
/// and witness images need words up to three times longer.
pub fn completion_degree(name: &str, degree: usize) -> usize {
    if let Some(cap) = degree_cap_override() {
        return cap;
    }
    match name {
        "AuF" | "AuFG" | "Onp" => (2 * degree).max(3),
        _ => (3 * degree).max(6),
    }
}

/// `QGAL_DEGREE_CAP`, when set to a number.
pub fn degree_cap_override() -> Option<usize> {
    std::env::var("QGAL_DEGREE_CAP").ok()?.trim().parse().ok()
}

/// A catalog name or a presentation file. The base of a coaction file is a
/// catalog name or a path relative to the coaction file.
pub fn resolve(target: &str, degree: usize, n: usize, p: usize, coaction: Option<&str>) -> Result<Target> {
    let mut params = CatalogParams::with_degree(completion_degree(target, degree));
    params.n = n;
    params.p = p;
    if matches!(target, "AuF" | "AuFG") {
        params.n = 3;
        params.p = 3;
    }
    if CATALOG_NAMES.contains(&target) {
        let e = catalog(target, &params)?;
        return Ok(Target {
            name: target.to_string(),
            presentation: e.presentation,
            hopf: e.hopf,
            coaction: e.coaction,
            params,
            from_catalog: true,
        });
    }
    let config = CompletionConfig { degree: params.completion_degree, rule_cap: params.rule_cap };
    let f = load_file(target, config)?;
    let mut t = Target {
        name: f.presentation.name.clone(),
        presentation: f.presentation,
        hopf: f.hopf,
        coaction: None,
        params,
        from_catalog: false,
    };
    if let Some(path) = coaction {
        let src = read(path)?;
        let cf = parse_coaction_file(&src)?;
        if cf.total != t.name {
            return Err(Error::Invalid(format!("coaction file is for `{}`, target is `{}`", cf.total, t.name)));
        }
        let base = if CATALOG_NAMES.contains(&cf.base.as_str()) {
            catalog(&cf.base, &t.params)?.hopf
        } else {
            let beside = Path::new(path).parent().unwrap_or(Path::new(".")).join(&cf.base);
            let base_path = if beside.exists() { beside.to_string_lossy().into_owned() } else { cf.base.clone() };
            load_file(&base_path, config)?.hopf
        };
        let base = base.ok_or_else(|| Error::Invalid(format!("`{}` has no Hopf structure", cf.base)))?;
        t.coaction = Some(Arc::new(cf.build(base, t.presentation.clone())?));
    }
    Ok(t)
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))
}

fn load_file(path: &str, config: CompletionConfig) -> Result<qgal::presentations::PresentationFile> {
    if !Path::new(path).exists() {
        return Err(Error::UnknownName(path.to_string()));
    }
    parse_presentation_file(&read(path)?, config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completion_degree_scales_with_the_check_degree() {
        if degree_cap_override().is_some() {
            return;
        }
        assert_eq!(completion_degree("GLq2m2", 1), 6);
        assert_eq!(completion_degree("Uq2m2", 3), 9);
        assert_eq!(completion_degree("AuFG", 1), 3);
        assert_eq!(completion_degree("Onp", 2), 4);
    }

    #[test]
    fn auf_targets_are_three_by_three() {
        let t = resolve("AuF", 1, 2, 1, None).unwrap();
        assert_eq!((t.params.n, t.params.p), (3, 3));
        assert!(t.hopf.is_some() && t.from_catalog);
        assert!(matches!(resolve("missing.qg", 1, 2, 1, None), Err(Error::UnknownName(_))));
    }
}
