use std::collections::BTreeSet;

/// One of the two variables of the logic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

/// Syntax tree of a two-variable formula.
///
/// `Less` is the distinguished partial order and `Trans` the distinguished
/// transitive relation; which one is legal depends on the signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Unary(String, Var),
    Binary(String, Var, Var),
    Less(Var, Var),
    Trans(Var, Var),
    Eq(Var, Var),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
}

use Formula::*;

/// Predicate occurrences collected from a formula.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vocabulary {
    pub unary: BTreeSet<String>,
    pub binary: BTreeSet<String>,
    pub less: bool,
    pub trans: bool,
}

impl Formula {
    pub fn from_bool(b: bool) -> Formula {
        if b {
            Formula::True
        } else {
            Formula::False
        }
    }

    pub fn unary(name: &str, v: Var) -> Formula {
        Unary(name.to_string(), v)
    }

    pub fn binary(name: &str, a: Var, b: Var) -> Formula {
        Binary(name.to_string(), a, b)
    }

    pub fn not(f: Formula) -> Formula {
        Not(Box::new(f))
    }

    pub fn and(fs: Vec<Formula>) -> Formula {
        And(fs)
    }

    pub fn or(fs: Vec<Formula>) -> Formula {
        Or(fs)
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: Var, f: Formula) -> Formula {
        Forall(v, Box::new(f))
    }

    pub fn exists(v: Var, f: Formula) -> Formula {
        Exists(v, Box::new(f))
    }

    pub fn neq(a: Var, b: Var) -> Formula {
        Formula::not(Eq(a, b))
    }

    /// `a ~ b`: distinct and incomparable under `<`.
    pub fn incomparable(a: Var, b: Var) -> Formula {
        And(vec![
            Formula::not(Eq(a, b)),
            Formula::not(Less(a, b)),
            Formula::not(Less(b, a)),
        ])
    }

    pub fn is_atom(&self) -> bool {
        matches!(
            self,
            True | False | Unary(..) | Binary(..) | Less(..) | Trans(..) | Eq(..)
        )
    }

    /// Free variables as a bitmask: bit 0 for x, bit 1 for y.
    pub fn free_mask(&self) -> u8 {
        fn bit(v: Var) -> u8 {
            1 << v.index()
        }
        match self {
            True | False => 0,
            Unary(_, v) => bit(*v),
            Binary(_, a, b) | Less(a, b) | Trans(a, b) | Eq(a, b) => bit(*a) | bit(*b),
            Not(f) => f.free_mask(),
            And(fs) | Or(fs) => fs.iter().fold(0, |m, f| m | f.free_mask()),
            Implies(a, b) | Iff(a, b) => a.free_mask() | b.free_mask(),
            Forall(v, f) | Exists(v, f) => f.free_mask() & !bit(*v),
        }
    }

    pub fn free_vars(&self) -> Vec<Var> {
        let m = self.free_mask();
        [Var::X, Var::Y]
            .into_iter()
            .filter(|v| m & (1 << v.index()) != 0)
            .collect()
    }

    pub fn is_sentence(&self) -> bool {
        self.free_mask() == 0
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Forall(..) | Exists(..) => false,
            Not(f) => f.is_quantifier_free(),
            And(fs) | Or(fs) => fs.iter().all(|f| f.is_quantifier_free()),
            Implies(a, b) | Iff(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            _ => true,
        }
    }

    pub fn is_equality_free(&self) -> bool {
        let mut ok = true;
        self.visit_atoms(&mut |a| {
            if matches!(a, Eq(..)) {
                ok = false
            }
        });
        ok
    }

    /// True when the formula mentions no binary atom at all, distinguished or not.
    pub fn is_pure_boolean(&self) -> bool {
        let mut ok = true;
        self.visit_atoms(&mut |a| {
            if matches!(a, Binary(..) | Less(..) | Trans(..) | Eq(..)) {
                ok = false
            }
        });
        ok && self.is_quantifier_free()
    }

    pub fn visit_atoms(&self, f: &mut dyn FnMut(&Formula)) {
        match self {
            Not(g) | Forall(_, g) | Exists(_, g) => g.visit_atoms(f),
            And(gs) | Or(gs) => gs.iter().for_each(|g| g.visit_atoms(f)),
            Implies(a, b) | Iff(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f)
            }
            atom => f(atom),
        }
    }

    pub fn vocabulary(&self) -> Vocabulary {
        let mut voc = Vocabulary::default();
        self.visit_atoms(&mut |a| match a {
            Unary(p, _) => {
                voc.unary.insert(p.clone());
            }
            Binary(r, _, _) => {
                voc.binary.insert(r.clone());
            }
            Less(..) => voc.less = true,
            Trans(..) => voc.trans = true,
            _ => {}
        });
        voc
    }

    /// Rebuilds the formula bottom-up, replacing every atom by `f(atom)`.
    pub fn map_atoms(&self, f: &mut dyn FnMut(&Formula) -> Formula) -> Formula {
        match self {
            Not(g) => Formula::not(g.map_atoms(f)),
            And(gs) => And(gs.iter().map(|g| g.map_atoms(f)).collect()),
            Or(gs) => Or(gs.iter().map(|g| g.map_atoms(f)).collect()),
            Implies(a, b) => Formula::implies(a.map_atoms(f), b.map_atoms(f)),
            Iff(a, b) => Formula::iff(a.map_atoms(f), b.map_atoms(f)),
            Forall(v, g) => Formula::forall(*v, g.map_atoms(f)),
            Exists(v, g) => Formula::exists(*v, g.map_atoms(f)),
            atom => f(atom),
        }
    }

    /// Renames variables everywhere, bound occurrences included.
    pub fn rename_vars(&self, m: &dyn Fn(Var) -> Var) -> Formula {
        match self {
            Unary(p, v) => Unary(p.clone(), m(*v)),
            Binary(r, a, b) => Binary(r.clone(), m(*a), m(*b)),
            Less(a, b) => Less(m(*a), m(*b)),
            Trans(a, b) => Trans(m(*a), m(*b)),
            Eq(a, b) => Eq(m(*a), m(*b)),
            True => True,
            False => False,
            Not(g) => Formula::not(g.rename_vars(m)),
            And(gs) => And(gs.iter().map(|g| g.rename_vars(m)).collect()),
            Or(gs) => Or(gs.iter().map(|g| g.rename_vars(m)).collect()),
            Implies(a, b) => Formula::implies(a.rename_vars(m), b.rename_vars(m)),
            Iff(a, b) => Formula::iff(a.rename_vars(m), b.rename_vars(m)),
            Forall(v, g) => Formula::forall(m(*v), g.rename_vars(m)),
            Exists(v, g) => Formula::exists(m(*v), g.rename_vars(m)),
        }
    }

    /// Exchanges x and y throughout.
    pub fn swap_vars(&self) -> Formula {
        self.rename_vars(&|v| v.other())
    }

    /// Replaces every variable by `v`. Only meaningful on quantifier-free formulas.
    pub fn collapse_to(&self, v: Var) -> Formula {
        self.rename_vars(&|_| v)
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Not(g) | Forall(_, g) | Exists(_, g) => 1 + g.size(),
            And(gs) | Or(gs) => 1 + gs.iter().map(|g| g.size()).sum::<usize>(),
            Implies(a, b) | Iff(a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }

    /// Splits a top-level conjunction into its conjuncts.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        match self {
            And(gs) => gs.iter().flat_map(|g| g.conjuncts()).collect(),
            True => Vec::new(),
            f => vec![f],
        }
    }

    /// Constant propagation, flattening and double-negation removal.
    ///
    /// Reflexive `<` atoms become false and reflexive equalities true.
    pub fn simplify(&self) -> Formula {
        match self {
            Eq(a, b) if a == b => True,
            Less(a, b) if a == b => False,
            Not(g) => match g.simplify() {
                True => False,
                False => True,
                Not(h) => *h,
                h => Formula::not(h),
            },
            And(gs) => {
                let mut out = Vec::new();
                for g in gs {
                    match g.simplify() {
                        True => {}
                        False => return False,
                        And(hs) => out.extend(hs),
                        h => out.push(h),
                    }
                }
                dedup_keep_order(&mut out);
                match out.len() {
                    0 => True,
                    1 => out.pop().unwrap(),
                    _ => And(out),
                }
            }
            Or(gs) => {
                let mut out = Vec::new();
                for g in gs {
                    match g.simplify() {
                        False => {}
                        True => return True,
                        Or(hs) => out.extend(hs),
                        h => out.push(h),
                    }
                }
                dedup_keep_order(&mut out);
                match out.len() {
                    0 => False,
                    1 => out.pop().unwrap(),
                    _ => Or(out),
                }
            }
            Implies(a, b) => match (a.simplify(), b.simplify()) {
                (False, _) | (_, True) => True,
                (True, h) => h,
                (h, False) => Formula::not(h).simplify(),
                (h, k) => Formula::implies(h, k),
            },
            Iff(a, b) => match (a.simplify(), b.simplify()) {
                (True, h) | (h, True) => h,
                (False, h) | (h, False) => Formula::not(h).simplify(),
                (h, k) if h == k => True,
                (h, k) => Formula::iff(h, k),
            },
            Forall(v, g) => match g.simplify() {
                h @ (True | False) => h,
                h if h.free_mask() & (1 << v.index()) == 0 => h,
                h => Formula::forall(*v, h),
            },
            Exists(v, g) => match g.simplify() {
                h @ (True | False) => h,
                h if h.free_mask() & (1 << v.index()) == 0 => h,
                h => Formula::exists(*v, h),
            },
            atom => atom.clone(),
        }
    }
}

fn dedup_keep_order(v: &mut Vec<Formula>) {
    let mut seen = std::collections::HashSet::new();
    v.retain(|f| seen.insert(f.clone()));
}

/// Negation normal form over `¬, ∧, ∨` and quantifiers.
pub fn nnf(f: &Formula) -> Formula {
    fn go(f: &Formula, neg: bool) -> Formula {
        match f {
            Not(g) => go(g, !neg),
            And(gs) => {
                let hs = gs.iter().map(|g| go(g, neg)).collect();
                if neg {
                    Or(hs)
                } else {
                    And(hs)
                }
            }
            Or(gs) => {
                let hs = gs.iter().map(|g| go(g, neg)).collect();
                if neg {
                    And(hs)
                } else {
                    Or(hs)
                }
            }
            Implies(a, b) => {
                if neg {
                    And(vec![go(a, false), go(b, true)])
                } else {
                    Or(vec![go(a, true), go(b, false)])
                }
            }
            Iff(a, b) => {
                if neg {
                    Or(vec![
                        And(vec![go(a, false), go(b, true)]),
                        And(vec![go(a, true), go(b, false)]),
                    ])
                } else {
                    And(vec![
                        Or(vec![go(a, true), go(b, false)]),
                        Or(vec![go(a, false), go(b, true)]),
                    ])
                }
            }
            Forall(v, g) => {
                if neg {
                    Formula::exists(*v, go(g, true))
                } else {
                    Formula::forall(*v, go(g, false))
                }
            }
            Exists(v, g) => {
                if neg {
                    Formula::forall(*v, go(g, true))
                } else {
                    Formula::exists(*v, go(g, false))
                }
            }
            True => {
                if neg {
                    False
                } else {
                    True
                }
            }
            False => {
                if neg {
                    True
                } else {
                    False
                }
            }
            atom => {
                if neg {
                    Formula::not(atom.clone())
                } else {
                    atom.clone()
                }
            }
        }
    }
    go(f, false)
}

/// `p̄⟨i⟩(v)`: the conjunction fixing the bits of `i` over `names`, most significant first.
pub fn label_unary(names: &[String], i: usize, v: Var) -> Formula {
    let n = names.len();
    And(names
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let atom = Unary(p.clone(), v);
            if (i >> (n - 1 - j)) & 1 == 1 {
                atom
            } else {
                Formula::not(atom)
            }
        })
        .collect())
}

/// Binary counterpart of [`label_unary`].
pub fn label_binary(names: &[String], i: usize, a: Var, b: Var) -> Formula {
    let n = names.len();
    And(names
        .iter()
        .enumerate()
        .map(|(j, r)| {
            let atom = Binary(r.clone(), a, b);
            if (i >> (n - 1 - j)) & 1 == 1 {
                atom
            } else {
                Formula::not(atom)
            }
        })
        .collect())
}

/// Smallest `n` with `2^n >= k`, at least 1.
pub fn bits_for(k: usize) -> usize {
    let mut n = 1;
    while (1usize << n) < k {
        n += 1;
    }
    n
}
