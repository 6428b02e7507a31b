//! The `A,B=>C` rule grammar: comma-separated literals on each side of
//! `=>`, with `!` prefixing a negated attribute.

use sigrule_core::{Event, Literal, Relation};

use crate::CliError;

pub fn parse_literal(rel: &Relation, token: &str) -> Result<Literal, CliError> {
    let token = token.trim();
    let (name, value) = match token.strip_prefix('!') {
        Some(rest) => (rest, false),
        None => (token, true),
    };
    if name.is_empty() {
        return Err(CliError::Usage("empty literal in rule spec".into()));
    }
    rel.literal(name, value).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_side(rel: &Relation, side: &str, what: &str) -> Result<Event, CliError> {
    let side = side.trim();
    if side.is_empty() {
        return Err(CliError::Usage(format!("{what} must contain at least one literal")));
    }
    let lits = side
        .split(',')
        .map(|tok| parse_literal(rel, tok))
        .collect::<Result<Vec<_>, _>>()?;
    Event::new(lits).map_err(|e| CliError::Usage(format!("{what}: {e}")))
}

/// Parses `lit(,lit)*=>lit(,lit)*` against the relation's attributes.
/// The two sides must not share an attribute.
pub fn parse_rule(rel: &Relation, spec: &str) -> Result<(Event, Event), CliError> {
    let (lhs, rhs) = spec.split_once("=>").ok_or_else(|| {
        CliError::Usage(format!("rule spec must look like `A,B=>C` (missing `=>` in `{spec}`)"))
    })?;
    let x = parse_side(rel, lhs, "antecedent")?;
    let y = parse_side(rel, rhs, "consequent")?;
    for l in x.literals() {
        if y.mentions_attr(l.attr) {
            return Err(CliError::Usage(format!(
                "attribute `{}` appears on both sides of the rule",
                rel.attribute_name(l.attr)
            )));
        }
    }
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel() -> Relation {
        Relation::parse_transactions("a b c\na c\nb").unwrap()
    }

    #[test]
    fn parses_positive_and_negated_literals() {
        let r = rel();
        let (x, y) = parse_rule(&r, "a,!b=>c").unwrap();
        assert_eq!(r.render_event(&x), "a,!b");
        assert_eq!(r.render_event(&y), "c");
    }

    #[test]
    fn whitespace_is_tolerated() {
        let r = rel();
        let (x, y) = parse_rule(&r, " a , b => c ").unwrap();
        assert_eq!(r.render_event(&x), "a,b");
        assert_eq!(r.render_event(&y), "c");
    }

    #[test]
    fn duplicate_literals_collapse() {
        let r = rel();
        let (x, _) = parse_rule(&r, "a,a=>c").unwrap();
        assert_eq!(r.render_event(&x), "a");
    }

    #[test]
    fn bad_specs_are_usage_errors() {
        let r = rel();
        for bad in ["a,b", "=>c", "a=>", "a=>a", "nosuch=>c", "a,!a=>c", "a,=>c"] {
            assert!(matches!(parse_rule(&r, bad), Err(CliError::Usage(_))), "accepted `{bad}`");
        }
    }
}
