use std::collections::HashMap;

use super::LogicError;

/// Which distinguished binary symbol, if any, the signature carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distinguished {
    None,
    /// `<`, interpreted as a strict partial order.
    PartialOrder,
    /// `t`, interpreted as a transitive relation.
    Transitive,
}

/// Names that can never be used for ordinary predicates.
pub const RESERVED: &[&str] = &["forall", "exists", "true", "false", "t", "x", "y"];

/// A finite relational signature of unary and binary predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    unary: Vec<String>,
    binary: Vec<String>,
    distinguished: Distinguished,
    index: HashMap<String, (usize, usize)>,
}

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new<U, B>(unary: U, binary: B, distinguished: Distinguished) -> Result<Self, LogicError>
    where
        U: IntoIterator,
        U::Item: Into<String>,
        B: IntoIterator,
        B::Item: Into<String>,
    {
        let mut sig = Signature {
            unary: Vec::new(),
            binary: Vec::new(),
            distinguished,
            index: HashMap::new(),
        };
        for name in unary {
            sig.push(name.into(), 1)?;
        }
        for name in binary {
            sig.push(name.into(), 2)?;
        }
        Ok(sig)
    }

    pub fn empty(distinguished: Distinguished) -> Self {
        Signature {
            unary: Vec::new(),
            binary: Vec::new(),
            distinguished,
            index: HashMap::new(),
        }
    }

    fn push(&mut self, name: String, arity: usize) -> Result<(), LogicError> {
        if !is_identifier(&name) || RESERVED.contains(&name.as_str()) {
            return Err(LogicError::InvalidName(name));
        }
        if self.index.contains_key(&name) {
            return Err(LogicError::DuplicateName(name));
        }
        let list = if arity == 1 { &mut self.unary } else { &mut self.binary };
        self.index.insert(name.clone(), (arity, list.len()));
        list.push(name);
        Ok(())
    }

    pub fn add_unary(&mut self, name: impl Into<String>) -> Result<(), LogicError> {
        self.push(name.into(), 1)
    }

    pub fn add_binary(&mut self, name: impl Into<String>) -> Result<(), LogicError> {
        self.push(name.into(), 2)
    }

    /// Adds a unary predicate whose name starts with `stem` and is not yet taken.
    pub fn fresh_unary(&mut self, stem: &str) -> String {
        let name = self.fresh_name(stem);
        self.push(name.clone(), 1).expect("fresh name is valid");
        name
    }

    pub fn fresh_binary(&mut self, stem: &str) -> String {
        let name = self.fresh_name(stem);
        self.push(name.clone(), 2).expect("fresh name is valid");
        name
    }

    fn fresh_name(&self, stem: &str) -> String {
        (0..)
            .map(|k| format!("{stem}{k}"))
            .find(|n| !self.index.contains_key(n) && !RESERVED.contains(&n.as_str()))
            .unwrap()
    }

    pub fn unary(&self) -> &[String] {
        &self.unary
    }

    pub fn binary(&self) -> &[String] {
        &self.binary
    }

    pub fn distinguished(&self) -> Distinguished {
        self.distinguished
    }

    pub fn with_distinguished(&self, distinguished: Distinguished) -> Self {
        let mut s = self.clone();
        s.distinguished = distinguished;
        s
    }

    pub fn unary_index(&self, name: &str) -> Option<usize> {
        match self.index.get(name) {
            Some(&(1, i)) => Some(i),
            _ => None,
        }
    }

    pub fn binary_index(&self, name: &str) -> Option<usize> {
        match self.index.get(name) {
            Some(&(2, i)) => Some(i),
            _ => None,
        }
    }

    /// Arity of an ordinary predicate, if declared.
    pub fn arity(&self, name: &str) -> Option<usize> {
        self.index.get(name).map(|&(a, _)| a)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Number of ordinary predicates.
    pub fn len(&self) -> usize {
        self.unary.len() + self.binary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when every ordinary predicate of `self` occurs in `other` with the same arity.
    pub fn is_subsignature_of(&self, other: &Signature) -> bool {
        self.distinguished == other.distinguished
            && self.unary.iter().all(|p| other.unary_index(p).is_some())
            && self.binary.iter().all(|p| other.binary_index(p).is_some())
    }

    /// Union of two signatures with the same distinguished symbol.
    pub fn union(&self, other: &Signature) -> Result<Signature, LogicError> {
        let mut s = self.clone();
        for p in &other.unary {
            match s.arity(p) {
                Some(1) => {}
                Some(_) => return Err(LogicError::DuplicateName(p.clone())),
                None => s.push(p.clone(), 1)?,
            }
        }
        for p in &other.binary {
            match s.arity(p) {
                Some(2) => {}
                Some(_) => return Err(LogicError::DuplicateName(p.clone())),
                None => s.push(p.clone(), 2)?,
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_reserved_and_duplicates() {
        assert!(Signature::new(["t"], Vec::<String>::new(), Distinguished::None).is_err());
        assert!(Signature::new(["p", "p"], Vec::<String>::new(), Distinguished::None).is_err());
        assert!(Signature::new(["p"], ["p"], Distinguished::None).is_err());
        assert!(Signature::new(["9p"], Vec::<String>::new(), Distinguished::None).is_err());
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let mut s = Signature::new(["k0"], ["r"], Distinguished::PartialOrder).unwrap();
        let a = s.fresh_unary("k");
        let b = s.fresh_unary("k");
        assert_eq!(a, "k1");
        assert_eq!(b, "k2");
        assert_eq!(s.unary_index("k2"), Some(2));
        assert_eq!(s.binary_index("r"), Some(0));
    }
}
