use std::fmt;

/// Vertex and color names.
///
/// Constructions keep the structure of their labels (subsets, pairs,
/// primed copies) so that every color of a derived PDA can be traced back
/// to the ingredients that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Int(u64),
    Name(String),
    /// A sorted subset of `{1..n}`.
    Set(Vec<u32>),
    /// A fresh copy of a color, written `s'`.
    Primed(Box<Label>),
    Tuple(Vec<Label>),
}

impl Label {
    pub fn name(s: &str) -> Label {
        Label::Name(s.to_owned())
    }

    pub fn pair(a: Label, b: Label) -> Label {
        Label::Tuple(vec![a, b])
    }

    pub fn primed(self) -> Label {
        Label::Primed(Box::new(self))
    }

    pub fn as_set(&self) -> Option<&[u32]> {
        match self {
            Label::Set(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[Label]> {
        match self {
            Label::Tuple(t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Name(s) => f.write_str(s),
            Label::Set(s) => {
                f.write_str("{")?;
                for (i, x) in s.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
            Label::Primed(inner) => write!(f, "{inner}'"),
            Label::Tuple(items) => {
                f.write_str("(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let l = Label::pair(Label::Set(vec![1, 3]), Label::Int(2).primed());
        assert_eq!(l.to_string(), "({1,3},2')");
        assert_eq!(Label::Set(vec![]).to_string(), "{}");
    }
}
