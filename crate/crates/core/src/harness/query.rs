//! Single subnormality queries.

use crate::corpus::load_group_source;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::perm::{parse_cycles, Permutation};
use crate::subnormal::{is_subnormal_variant, StepPolicy};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryOutcome {
    pub group: String,
    pub group_order: u64,
    pub subgroup_order: u64,
    pub policy: StepPolicy,
    pub verdict: bool,
    /// Serialised chain, present exactly when the verdict is true.
    pub witness: Option<String>,
}

/// Comma separated cycle notation, e.g. `(1 2 3), (1 2)`. Commas inside
/// parentheses are left alone. An empty list or `()` means the trivial
/// subgroup.
pub fn parse_generator_list(degree: usize, text: &str) -> Result<Vec<Permutation>> {
    let mut pieces = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::format(format!("unbalanced parentheses in {text:?}")));
        }
        if c == ',' && depth == 0 {
            pieces.push(std::mem::take(&mut current));
        } else {
            current.push(c);
        }
    }
    if depth != 0 {
        return Err(Error::format(format!("unbalanced parentheses in {text:?}")));
    }
    pieces.push(current);
    pieces
        .iter()
        .map(|p| p.trim())
        .filter(|p| !p.is_empty() && *p != "()")
        .map(|p| parse_cycles(degree, p).map_err(Error::format))
        .collect()
}

pub fn query(group_source: &str, subgroup_gens: &str, policy: StepPolicy) -> Result<QueryOutcome> {
    let (name, g) = load_group_source(group_source)?;
    let gens = parse_generator_list(g.degree(), subgroup_gens)?;
    for x in &gens {
        if !g.contains(x)? {
            return Err(Error::Membership(format!(
                "{} is not an element of {name}",
                x.to_cycle_string()
            )));
        }
    }
    let lat = Lattice::new(&g)?;
    let h = lat.generated_by_perms(&gens)?;
    let (verdict, witness) = is_subnormal_variant(&lat, h, policy);
    Ok(QueryOutcome {
        group: name,
        group_order: g.order(),
        subgroup_order: lat.order_of(h),
        policy,
        verdict,
        witness: witness.map(|w| w.serialize(&lat)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_lists() {
        assert_eq!(parse_generator_list(4, "").unwrap().len(), 0);
        assert_eq!(parse_generator_list(4, "()").unwrap().len(), 0);
        assert_eq!(
            parse_generator_list(4, "(1 2)(3 4), (1 3)").unwrap().len(),
            2
        );
        assert!(parse_generator_list(4, "(1 2").is_err());
        assert!(parse_generator_list(4, "(1 9)").is_err());
    }

    #[test]
    fn query_rejects_foreign_generators() {
        let err = query("builtin:A4", "(1 2)", StepPolicy::Subnormal).unwrap_err();
        assert!(matches!(err, Error::Membership(_)));
    }

    #[test]
    fn query_d4_reflection() {
        let q = query("builtin:D4", "(2 4)", StepPolicy::Subnormal).unwrap();
        assert!(q.verdict);
        assert_eq!(q.witness.unwrap().lines().count(), 3);
    }
}
