use super::signature::{Distinguished, Signature};
use super::types::{Link, OneType, OrderRel, TwoType};
use super::LogicError;

/// A finite structure over a signature, stored as dense truth tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    sig: Signature,
    size: usize,
    unary: Vec<Vec<bool>>,
    binary: Vec<Vec<bool>>,
    dist: Vec<bool>,
}

/// A failure of the distinguished relation to be a partial order or transitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Reflexive(usize),
    NotTransitive(usize, usize, usize),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Reflexive(a) => write!(f, "element {a} is related to itself"),
            Violation::NotTransitive(a, b, c) => {
                write!(f, "{a} -> {b} -> {c} holds but {a} -> {c} does not")
            }
        }
    }
}

impl Structure {
    /// Structure of the given size with every relation empty.
    pub fn new(sig: Signature, size: usize) -> Self {
        let dist = if sig.distinguished() == Distinguished::None {
            Vec::new()
        } else {
            vec![false; size * size]
        };
        Structure {
            unary: vec![vec![false; size]; sig.unary().len()],
            binary: vec![vec![false; size * size]; sig.binary().len()],
            dist,
            sig,
            size,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn unary(&self, p: usize, a: usize) -> bool {
        self.unary[p][a]
    }

    pub fn set_unary(&mut self, p: usize, a: usize, value: bool) {
        self.unary[p][a] = value;
    }

    pub fn binary(&self, r: usize, a: usize, b: usize) -> bool {
        self.binary[r][a * self.size + b]
    }

    pub fn set_binary(&mut self, r: usize, a: usize, b: usize, value: bool) {
        self.binary[r][a * self.size + b] = value;
    }

    /// The distinguished relation (`<` or `t`); false when there is none.
    pub fn dist(&self, a: usize, b: usize) -> bool {
        !self.dist.is_empty() && self.dist[a * self.size + b]
    }

    pub fn set_dist(&mut self, a: usize, b: usize, value: bool) {
        assert!(!self.dist.is_empty(), "signature has no distinguished symbol");
        self.dist[a * self.size + b] = value;
    }

    pub fn unary_by_name(&self, name: &str, a: usize) -> Result<bool, LogicError> {
        let p = self
            .sig
            .unary_index(name)
            .ok_or_else(|| LogicError::UnknownPredicate(name.to_string()))?;
        Ok(self.unary(p, a))
    }

    pub fn set_unary_by_name(&mut self, name: &str, a: usize, value: bool) -> Result<(), LogicError> {
        let p = self
            .sig
            .unary_index(name)
            .ok_or_else(|| LogicError::UnknownPredicate(name.to_string()))?;
        self.set_unary(p, a, value);
        Ok(())
    }

    pub fn binary_by_name(&self, name: &str, a: usize, b: usize) -> Result<bool, LogicError> {
        let r = self
            .sig
            .binary_index(name)
            .ok_or_else(|| LogicError::UnknownPredicate(name.to_string()))?;
        Ok(self.binary(r, a, b))
    }

    pub fn set_binary_by_name(
        &mut self,
        name: &str,
        a: usize,
        b: usize,
        value: bool,
    ) -> Result<(), LogicError> {
        let r = self
            .sig
            .binary_index(name)
            .ok_or_else(|| LogicError::UnknownPredicate(name.to_string()))?;
        self.set_binary(r, a, b, value);
        Ok(())
    }

    /// Checks irreflexivity and transitivity of `<`, or transitivity of `t`.
    pub fn check_distinguished(&self) -> Vec<Violation> {
        let n = self.size;
        let mut out = Vec::new();
        match self.sig.distinguished() {
            Distinguished::None => {}
            d => {
                if d == Distinguished::PartialOrder {
                    out.extend((0..n).filter(|&a| self.dist(a, a)).map(Violation::Reflexive));
                }
                for a in 0..n {
                    for b in 0..n {
                        if !self.dist(a, b) {
                            continue;
                        }
                        for c in 0..n {
                            if self.dist(b, c) && !self.dist(a, c) {
                                out.push(Violation::NotTransitive(a, b, c));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn one_type(&self, a: usize) -> OneType {
        OneType {
            unary: (0..self.unary.len()).map(|p| self.unary(p, a)).collect(),
            diagonal: (0..self.binary.len()).map(|r| self.binary(r, a, a)).collect(),
            trans_loop: self.sig.distinguished() == Distinguished::Transitive && self.dist(a, a),
        }
    }

    /// Writes a 1-type onto element `a`.
    pub fn set_one_type(&mut self, a: usize, t: &OneType) {
        for (p, &v) in t.unary.iter().enumerate() {
            self.set_unary(p, a, v);
        }
        for (r, &v) in t.diagonal.iter().enumerate() {
            self.set_binary(r, a, a, v);
        }
        if self.sig.distinguished() == Distinguished::Transitive {
            self.set_dist(a, a, t.trans_loop);
        }
    }

    /// The 2-type of a pair of distinct elements.
    pub fn two_type(&self, a: usize, b: usize) -> TwoType {
        debug_assert_ne!(a, b);
        let link = match self.sig.distinguished() {
            Distinguished::None => Link::None,
            Distinguished::PartialOrder => Link::Order(if self.dist(a, b) {
                OrderRel::Less
            } else if self.dist(b, a) {
                OrderRel::Greater
            } else {
                OrderRel::Incomparable
            }),
            Distinguished::Transitive => Link::Trans {
                forward: self.dist(a, b),
                backward: self.dist(b, a),
            },
        };
        TwoType {
            left: self.one_type(a),
            right: self.one_type(b),
            forward: (0..self.binary.len()).map(|r| self.binary(r, a, b)).collect(),
            backward: (0..self.binary.len()).map(|r| self.binary(r, b, a)).collect(),
            link,
        }
    }

    /// Writes a 2-type onto the pair `(a, b)`, 1-types included.
    pub fn set_two_type(&mut self, a: usize, b: usize, t: &TwoType) {
        self.set_one_type(a, &t.left);
        self.set_one_type(b, &t.right);
        self.set_cross(a, b, t);
    }

    /// Writes only the cross atoms of a 2-type onto `(a, b)`.
    pub fn set_cross(&mut self, a: usize, b: usize, t: &TwoType) {
        for r in 0..t.forward.len() {
            self.set_binary(r, a, b, t.forward[r]);
            self.set_binary(r, b, a, t.backward[r]);
        }
        match t.link {
            Link::None => {}
            Link::Order(rel) => {
                self.set_dist(a, b, rel == OrderRel::Less);
                self.set_dist(b, a, rel == OrderRel::Greater);
            }
            Link::Trans { forward, backward } => {
                self.set_dist(a, b, forward);
                self.set_dist(b, a, backward);
            }
        }
    }

    /// The induced substructure on `elems`, renumbered in the given order.
    pub fn substructure(&self, elems: &[usize]) -> Structure {
        let mut s = Structure::new(self.sig.clone(), elems.len());
        for (i, &a) in elems.iter().enumerate() {
            for p in 0..self.unary.len() {
                s.set_unary(p, i, self.unary(p, a));
            }
            for (j, &b) in elems.iter().enumerate() {
                for r in 0..self.binary.len() {
                    s.set_binary(r, i, j, self.binary(r, a, b));
                }
                if !self.dist.is_empty() {
                    s.set_dist(i, j, self.dist(a, b));
                }
            }
        }
        s
    }

    /// Re-expresses the structure over a larger signature; new predicates are empty.
    pub fn expand(&self, sig: &Signature) -> Result<Structure, LogicError> {
        if !self.sig.is_subsignature_of(sig) {
            return Err(LogicError::SignatureMismatch);
        }
        self.project(sig)
    }

    /// Restricts the structure to the predicates of `sig`.
    pub fn reduct(&self, sig: &Signature) -> Result<Structure, LogicError> {
        if !sig.is_subsignature_of(&self.sig) {
            return Err(LogicError::SignatureMismatch);
        }
        self.project(sig)
    }

    fn project(&self, sig: &Signature) -> Result<Structure, LogicError> {
        let mut s = Structure::new(sig.clone(), self.size);
        for (p, name) in sig.unary().iter().enumerate() {
            if let Some(q) = self.sig.unary_index(name) {
                s.unary[p] = self.unary[q].clone();
            }
        }
        for (r, name) in sig.binary().iter().enumerate() {
            if let Some(q) = self.sig.binary_index(name) {
                s.binary[r] = self.binary[q].clone();
            }
        }
        if !s.dist.is_empty() && !self.dist.is_empty() {
            s.dist = self.dist.clone();
        }
        Ok(s)
    }

    /// Same truth tables over a signature with a different distinguished symbol.
    pub fn with_signature_unchecked(&self, sig: Signature) -> Structure {
        let mut s = Structure::new(sig, self.size);
        s.unary = self.unary.clone();
        s.binary = self.binary.clone();
        if !s.dist.is_empty() && !self.dist.is_empty() {
            s.dist = self.dist.clone();
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn po_sig() -> Signature {
        Signature::new(["p"], ["r"], Distinguished::PartialOrder).unwrap()
    }

    #[test]
    fn detects_order_violations() {
        let mut s = Structure::new(po_sig(), 3);
        s.set_dist(0, 1, true);
        s.set_dist(1, 2, true);
        assert_eq!(s.check_distinguished(), vec![Violation::NotTransitive(0, 1, 2)]);
        s.set_dist(0, 2, true);
        assert!(s.check_distinguished().is_empty());
        s.set_dist(2, 2, true);
        assert!(s.check_distinguished().contains(&Violation::Reflexive(2)));
    }

    #[test]
    fn two_type_round_trip() {
        let mut s = Structure::new(po_sig(), 2);
        s.set_unary(0, 1, true);
        s.set_binary(0, 0, 1, true);
        s.set_binary(0, 1, 1, true);
        s.set_dist(1, 0, true);
        let t = s.two_type(0, 1);
        assert_eq!(t.link, Link::Order(OrderRel::Greater));
        let mut u = Structure::new(po_sig(), 2);
        u.set_two_type(0, 1, &t);
        assert_eq!(u, s);
        assert_eq!(s.two_type(1, 0), t.reversed());
    }

    #[test]
    fn substructure_and_reduct() {
        let mut s = Structure::new(po_sig(), 3);
        s.set_dist(0, 2, true);
        s.set_unary(0, 2, true);
        let sub = s.substructure(&[2, 0]);
        assert!(sub.dist(1, 0));
        assert!(sub.unary(0, 0));
        let small = Signature::new(["p"], Vec::<String>::new(), Distinguished::PartialOrder).unwrap();
        let red = s.reduct(&small).unwrap();
        assert!(red.dist(0, 2));
        assert_eq!(red.expand(&po_sig()).unwrap().signature(), &po_sig());
    }
}
