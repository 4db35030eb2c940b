use super::formula::{Formula, Var};
use super::signature::{Distinguished, Signature};

/// Atomic facts about a single element.
///
/// Besides the unary predicates this records every diagonal atom `r(x,x)` of an
/// ordinary binary predicate, and `t(x,x)` when the signature is transitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneType {
    pub unary: Vec<bool>,
    pub diagonal: Vec<bool>,
    pub trans_loop: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderRel {
    Less,
    Greater,
    Incomparable,
}

impl OrderRel {
    pub const ALL: [OrderRel; 3] = [OrderRel::Less, OrderRel::Greater, OrderRel::Incomparable];

    pub fn reversed(self) -> OrderRel {
        match self {
            OrderRel::Less => OrderRel::Greater,
            OrderRel::Greater => OrderRel::Less,
            OrderRel::Incomparable => OrderRel::Incomparable,
        }
    }

    /// The navigational formula `x < y`, `x > y` or `x ~ y` (without `x != y`).
    pub fn formula(self, a: Var, b: Var) -> Formula {
        match self {
            OrderRel::Less => Formula::Less(a, b),
            OrderRel::Greater => Formula::Less(b, a),
            OrderRel::Incomparable => Formula::and(vec![
                Formula::not(Formula::Less(a, b)),
                Formula::not(Formula::Less(b, a)),
            ]),
        }
    }
}

/// How the distinguished symbol relates the two elements of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Link {
    None,
    Order(OrderRel),
    Trans { forward: bool, backward: bool },
}

impl Link {
    pub fn reversed(self) -> Link {
        match self {
            Link::None => Link::None,
            Link::Order(r) => Link::Order(r.reversed()),
            Link::Trans { forward, backward } => Link::Trans {
                forward: backward,
                backward: forward,
            },
        }
    }
}

/// Atomic facts about an ordered pair of distinct elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoType {
    pub left: OneType,
    pub right: OneType,
    /// `r(x,y)` for each ordinary binary `r`.
    pub forward: Vec<bool>,
    /// `r(y,x)` for each ordinary binary `r`.
    pub backward: Vec<bool>,
    pub link: Link,
}

impl OneType {
    /// Conjunction of the literals of the type, written over `v`.
    pub fn to_formula(&self, sig: &Signature, v: Var) -> Formula {
        let mut lits = Vec::new();
        for (p, &b) in sig.unary().iter().zip(&self.unary) {
            lits.push(lit(Formula::Unary(p.clone(), v), b));
        }
        for (r, &b) in sig.binary().iter().zip(&self.diagonal) {
            lits.push(lit(Formula::Binary(r.clone(), v, v), b));
        }
        if sig.distinguished() == Distinguished::Transitive {
            lits.push(lit(Formula::Trans(v, v), self.trans_loop));
        }
        Formula::And(lits)
    }
}

impl TwoType {
    pub fn reversed(&self) -> TwoType {
        TwoType {
            left: self.right.clone(),
            right: self.left.clone(),
            forward: self.backward.clone(),
            backward: self.forward.clone(),
            link: self.link.reversed(),
        }
    }

    /// Conjunction of all literals of the type, without the inequality `x != y`.
    pub fn to_formula(&self, sig: &Signature) -> Formula {
        let mut lits = vec![
            self.left.to_formula(sig, Var::X),
            self.right.to_formula(sig, Var::Y),
        ];
        for (i, r) in sig.binary().iter().enumerate() {
            lits.push(lit(Formula::Binary(r.clone(), Var::X, Var::Y), self.forward[i]));
            lits.push(lit(Formula::Binary(r.clone(), Var::Y, Var::X), self.backward[i]));
        }
        match self.link {
            Link::None => {}
            Link::Order(rel) => lits.push(rel.formula(Var::X, Var::Y)),
            Link::Trans { forward, backward } => {
                lits.push(lit(Formula::Trans(Var::X, Var::Y), forward));
                lits.push(lit(Formula::Trans(Var::Y, Var::X), backward));
            }
        }
        Formula::And(lits).simplify()
    }

    /// Whether a transitive relation can realise this pair: a two-way link needs both loops.
    pub fn is_consistent(&self) -> bool {
        match self.link {
            Link::Trans {
                forward: true,
                backward: true,
            } => self.left.trans_loop && self.right.trans_loop,
            _ => true,
        }
    }
}

fn lit(atom: Formula, positive: bool) -> Formula {
    if positive {
        atom
    } else {
        Formula::not(atom)
    }
}

fn all_vectors(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1usize << n).map(move |c| (0..n).map(|i| (c >> (n - 1 - i)) & 1 == 1).collect())
}

/// Every 1-type of the signature, in a fixed order.
pub fn enumerate_one_types(sig: &Signature) -> Vec<OneType> {
    let u = sig.unary().len();
    let b = sig.binary().len();
    let loops: &[bool] = if sig.distinguished() == Distinguished::Transitive {
        &[false, true]
    } else {
        &[false]
    };
    let mut out = Vec::new();
    for bits in all_vectors(u + b) {
        for &l in loops {
            out.push(OneType {
                unary: bits[..u].to_vec(),
                diagonal: bits[u..].to_vec(),
                trans_loop: l,
            });
        }
    }
    out
}

/// Every consistent 2-type of the signature.
pub fn enumerate_two_types(sig: &Signature) -> Vec<TwoType> {
    let ones = enumerate_one_types(sig);
    let b = sig.binary().len();
    let links: Vec<Link> = match sig.distinguished() {
        Distinguished::None => vec![Link::None],
        Distinguished::PartialOrder => OrderRel::ALL.iter().map(|&r| Link::Order(r)).collect(),
        Distinguished::Transitive => [(false, false), (true, false), (false, true), (true, true)]
            .iter()
            .map(|&(forward, backward)| Link::Trans { forward, backward })
            .collect(),
    };
    let mut out = Vec::new();
    for l in &ones {
        for r in &ones {
            for cross in all_vectors(2 * b) {
                for &link in &links {
                    let t = TwoType {
                        left: l.clone(),
                        right: r.clone(),
                        forward: cross[..b].to_vec(),
                        backward: cross[b..].to_vec(),
                        link,
                    };
                    if t.is_consistent() {
                        out.push(t);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_type_counts() {
        let po = Signature::new(["p", "q"], Vec::<String>::new(), Distinguished::PartialOrder).unwrap();
        assert_eq!(enumerate_one_types(&po).len(), 4);
        let tr = Signature::new(["p", "q"], Vec::<String>::new(), Distinguished::Transitive).unwrap();
        assert_eq!(enumerate_one_types(&tr).len(), 8);
        let bin = Signature::new(["p"], ["r"], Distinguished::None).unwrap();
        assert_eq!(enumerate_one_types(&bin).len(), 4);
    }

    #[test]
    fn two_type_counts() {
        let po = Signature::new(["p"], Vec::<String>::new(), Distinguished::PartialOrder).unwrap();
        assert_eq!(enumerate_two_types(&po).len(), 2 * 2 * 3);
        // 2 loops per side; the two-way link is only allowed with both loops.
        let tr = Signature::empty(Distinguished::Transitive);
        assert_eq!(enumerate_two_types(&tr).len(), 4 * 3 + 1);
    }
}
