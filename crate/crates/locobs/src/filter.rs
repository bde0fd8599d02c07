//! Selecting checks by id.

/// A set of id globs. A pattern without wildcards matches exactly one id.
#[derive(Clone, Debug)]
pub struct Selection {
    patterns: Vec<glob::Pattern>,
}

impl Selection {
    pub fn all() -> Self {
        Selection { patterns: vec![glob::Pattern::new("*").expect("valid glob")] }
    }

    pub fn new<S: AsRef<str>>(patterns: &[S]) -> Result<Self, glob::PatternError> {
        let patterns = patterns.iter().map(|p| glob::Pattern::new(p.as_ref())).collect::<Result<_, _>>()?;
        Ok(Selection { patterns })
    }

    /// One pattern; an invalid glob selects nothing.
    pub fn one(pattern: &str) -> Self {
        Selection { patterns: glob::Pattern::new(pattern).into_iter().collect() }
    }

    pub fn matches(&self, id: &str) -> bool {
        self.patterns.iter().any(|p| p.matches(id))
    }
}

impl Default for Selection {
    fn default() -> Self {
        Selection::all()
    }
}

#[cfg(test)]
mod tests {
    use super::Selection;

    #[test]
    fn exact_ids_and_globs() {
        assert!(Selection::one("CX").matches("CX"));
        assert!(!Selection::one("CX").matches("CXP"));
        assert!(Selection::one("pol/*").matches("pol/eigen"));
        assert!(!Selection::one("pol/*").matches("XX"));
        assert!(Selection::all().matches("XX"));
        let s = Selection::new(&["XX", "oracle/*"]).unwrap();
        assert!(s.matches("oracle/so42") && s.matches("XX") && !s.matches("PX"));
        assert!(Selection::new(&["[x"]).is_err());
        assert!(!Selection::one("[x").matches("[x"));
    }
}
