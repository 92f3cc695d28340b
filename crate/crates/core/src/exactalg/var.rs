use std::fmt;
use std::sync::Arc;

/// A symbolic variable.
///
/// `Lambda` variables are the Chern-root slots λ^i_j of a vertex (vertex is a
/// 0-based position in the quiver's vertex list, slot is 1-based).  `Param`
/// variables are named parameters such as `t1`, `hbar` or `u`.
///
/// The derived ordering is the fixed variable order used for canonical forms:
/// every `Lambda` precedes every `Param`, lambdas compare by `(vertex, slot)`
/// and parameters alphabetically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarId {
    Lambda { vertex: u16, slot: u16 },
    Param(Arc<str>),
}

impl VarId {
    pub fn lambda(vertex: usize, slot: usize) -> Self {
        assert!(slot >= 1, "lambda slots are 1-based");
        VarId::Lambda {
            vertex: vertex as u16,
            slot: slot as u16,
        }
    }

    pub fn param(name: &str) -> Self {
        VarId::Param(Arc::from(name))
    }

    pub fn is_lambda(&self) -> bool {
        matches!(self, VarId::Lambda { .. })
    }

    pub fn as_lambda(&self) -> Option<(usize, usize)> {
        match self {
            VarId::Lambda { vertex, slot } => Some((*vertex as usize, *slot as usize)),
            VarId::Param(_) => None,
        }
    }

    /// Parses the text form produced by `Display`: `l<vertex>_<slot>` with a
    /// 1-based vertex position, or a parameter identifier.
    pub fn parse(s: &str) -> Option<Self> {
        if let Some((v, t)) = parse_lambda_name(s) {
            return if v >= 1 && t >= 1 {
                Some(VarId::lambda(v - 1, t))
            } else {
                None
            };
        }
        let mut chars = s.chars();
        let first = chars.next()?;
        if !first.is_ascii_alphabetic() {
            return None;
        }
        if chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            Some(VarId::param(s))
        } else {
            None
        }
    }
}

fn parse_lambda_name(s: &str) -> Option<(usize, usize)> {
    let rest = s.strip_prefix('l')?;
    let (v, t) = rest.split_once('_')?;
    if v.is_empty() || t.is_empty() {
        return None;
    }
    if !v.bytes().all(|b| b.is_ascii_digit()) || !t.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some((v.parse().ok()?, t.parse().ok()?))
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Lambda { vertex, slot } => write!(f, "l{}_{}", *vertex as usize + 1, slot),
            VarId::Param(name) => f.write_str(name),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_lambdas_before_params() {
        let mut vs = vec![
            VarId::param("t1"),
            VarId::lambda(1, 1),
            VarId::param("b"),
            VarId::lambda(0, 2),
            VarId::lambda(0, 1),
        ];
        vs.sort();
        let shown: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        assert_eq!(shown, ["l1_1", "l1_2", "l2_1", "b", "t1"]);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["l1_1", "l3_12", "hbar", "t1", "s_2"] {
            assert_eq!(VarId::parse(s).unwrap().to_string(), s);
        }
        assert!(VarId::parse("l0_1").is_none());
        assert!(VarId::parse("1x").is_none());
    }
}
