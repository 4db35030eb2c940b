//! Grounding of a sentence over a fixed finite domain into CNF.

use std::collections::HashMap;

use varisat::{ExtendFormula, Lit, Solver, Var as SatVar};

use crate::logic::{nnf, Distinguished, Formula, LogicError, Signature, Structure, Var};

#[derive(Clone, Copy)]
enum Atom {
    Unary(usize, Var),
    Binary(usize, Var, Var),
    Dist(Var, Var),
    Eq(Var, Var),
}

enum Node {
    Const(bool),
    Lit(Atom, bool),
    And(Vec<usize>),
    Or(Vec<usize>),
    Forall(Var, usize),
    Exists(Var, usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum G {
    T,
    F,
    L(Lit),
}

/// Signals that the clause budget was exhausted.
#[derive(Debug)]
pub struct OverBudget;

/// Propositional encoding of "a structure of size `n` over `sig` satisfies the sentences".
pub struct Grounding<'s> {
    sig: Signature,
    n: usize,
    solver: Solver<'s>,
    next_var: usize,
    nodes: Vec<(Node, u8)>,
    memo: HashMap<(usize, usize, usize), G>,
    clauses: usize,
    max_clauses: usize,
}

impl<'s> Grounding<'s> {
    pub fn new(sig: &Signature, n: usize, max_clauses: usize) -> Self {
        let primary = sig.unary().len() * n
            + sig.binary().len() * n * n
            + if sig.distinguished() == Distinguished::None { 0 } else { n * n };
        Grounding {
            sig: sig.clone(),
            n,
            solver: Solver::new(),
            next_var: primary,
            nodes: Vec::new(),
            memo: HashMap::new(),
            clauses: 0,
            max_clauses,
        }
    }

    fn unary_var(&self, p: usize, a: usize) -> SatVar {
        SatVar::from_index(p * self.n + a)
    }

    fn binary_var(&self, r: usize, a: usize, b: usize) -> SatVar {
        let base = self.sig.unary().len() * self.n;
        SatVar::from_index(base + (r * self.n + a) * self.n + b)
    }

    fn dist_var(&self, a: usize, b: usize) -> SatVar {
        let base = self.sig.unary().len() * self.n + self.sig.binary().len() * self.n * self.n;
        SatVar::from_index(base + a * self.n + b)
    }

    fn fresh(&mut self) -> Lit {
        let v = SatVar::from_index(self.next_var);
        self.next_var += 1;
        v.positive()
    }

    fn clause(&mut self, lits: &[Lit]) -> Result<(), OverBudget> {
        self.clauses += 1;
        if self.clauses > self.max_clauses {
            return Err(OverBudget);
        }
        self.solver.add_clause(lits);
        Ok(())
    }

    fn compile(&mut self, f: &Formula) -> Result<usize, LogicError> {
        let node = match f {
            Formula::True => Node::Const(true),
            Formula::False => Node::Const(false),
            Formula::Not(g) => {
                let atom = self.atom(g)?;
                Node::Lit(atom, false)
            }
            Formula::And(gs) | Formula::Or(gs) => {
                let ids = gs.iter().map(|g| self.compile(g)).collect::<Result<Vec<_>, _>>()?;
                if matches!(f, Formula::And(_)) {
                    Node::And(ids)
                } else {
                    Node::Or(ids)
                }
            }
            Formula::Forall(v, g) => Node::Forall(*v, self.compile(g)?),
            Formula::Exists(v, g) => Node::Exists(*v, self.compile(g)?),
            Formula::Implies(..) | Formula::Iff(..) => unreachable!("input is in negation normal form"),
            atom => Node::Lit(self.atom(atom)?, true),
        };
        let mask = f.free_mask();
        self.nodes.push((node, mask));
        Ok(self.nodes.len() - 1)
    }

    fn atom(&self, f: &Formula) -> Result<Atom, LogicError> {
        let sig = &self.sig;
        let missing = |name: &str, used: usize| match sig.arity(name) {
            Some(declared) => LogicError::ArityMismatch { name: name.to_string(), used, declared },
            None => LogicError::UnknownPredicate(name.to_string()),
        };
        Ok(match f {
            Formula::Unary(p, v) => Atom::Unary(sig.unary_index(p).ok_or_else(|| missing(p, 1))?, *v),
            Formula::Binary(r, a, b) => Atom::Binary(sig.binary_index(r).ok_or_else(|| missing(r, 2))?, *a, *b),
            Formula::Less(a, b) => {
                if sig.distinguished() != Distinguished::PartialOrder {
                    return Err(LogicError::MissingDistinguished("<"));
                }
                Atom::Dist(*a, *b)
            }
            Formula::Trans(a, b) => {
                if sig.distinguished() != Distinguished::Transitive {
                    return Err(LogicError::MissingDistinguished("t"));
                }
                Atom::Dist(*a, *b)
            }
            Formula::Eq(a, b) => Atom::Eq(*a, *b),
            other => unreachable!("not an atom: {other:?}"),
        })
    }

    fn ground_atom(&self, atom: Atom, env: [usize; 2]) -> G {
        let e = |v: Var| env[v.index()];
        let lit = |v: SatVar| G::L(v.positive());
        match atom {
            Atom::Unary(p, v) => lit(self.unary_var(p, e(v))),
            Atom::Binary(r, a, b) => lit(self.binary_var(r, e(a), e(b))),
            Atom::Dist(a, b) => {
                if self.sig.distinguished() == Distinguished::PartialOrder && e(a) == e(b) {
                    G::F
                } else {
                    lit(self.dist_var(e(a), e(b)))
                }
            }
            Atom::Eq(a, b) => {
                if e(a) == e(b) {
                    G::T
                } else {
                    G::F
                }
            }
        }
    }

    fn key(&self, id: usize, env: [usize; 2]) -> (usize, usize, usize) {
        let mask = self.nodes[id].1;
        let x = if mask & 1 != 0 { env[0] } else { usize::MAX };
        let y = if mask & 2 != 0 { env[1] } else { usize::MAX };
        (id, x, y)
    }

    fn children(&self, id: usize, env: [usize; 2]) -> Vec<(usize, [usize; 2])> {
        match &self.nodes[id].0 {
            Node::And(cs) | Node::Or(cs) => cs.iter().map(|&c| (c, env)).collect(),
            Node::Forall(v, c) | Node::Exists(v, c) => (0..self.n)
                .map(|e| {
                    let mut env2 = env;
                    env2[v.index()] = e;
                    (*c, env2)
                })
                .collect(),
            _ => Vec::new(),
        }
    }

    fn is_conjunctive(&self, id: usize) -> bool {
        matches!(self.nodes[id].0, Node::And(_) | Node::Forall(..))
    }

    /// A literal implying the node (one-sided encoding: all occurrences are positive).
    fn encode(&mut self, id: usize, env: [usize; 2]) -> Result<G, OverBudget> {
        if let Node::Const(b) = self.nodes[id].0 {
            return Ok(if b { G::T } else { G::F });
        }
        if let Node::Lit(atom, pos) = self.nodes[id].0 {
            return Ok(match self.ground_atom(atom, env) {
                G::L(l) => G::L(if pos { l } else { !l }),
                G::T => if pos { G::T } else { G::F },
                G::F => if pos { G::F } else { G::T },
            });
        }
        let key = self.key(id, env);
        if let Some(&g) = self.memo.get(&key) {
            return Ok(g);
        }
        let conj = self.is_conjunctive(id);
        let mut lits = Vec::new();
        let mut decided = None;
        for (c, env2) in self.children(id, env) {
            match self.encode(c, env2)? {
                G::T if !conj => {
                    decided = Some(G::T);
                    break;
                }
                G::F if conj => {
                    decided = Some(G::F);
                    break;
                }
                G::T | G::F => {}
                G::L(l) => lits.push(l),
            }
        }
        let g = if let Some(g) = decided {
            g
        } else if lits.is_empty() {
            if conj {
                G::T
            } else {
                G::F
            }
        } else if lits.len() == 1 {
            G::L(lits[0])
        } else {
            let a = self.fresh();
            if conj {
                for l in lits {
                    self.clause(&[!a, l])?;
                }
            } else {
                let mut cl = vec![!a];
                cl.extend(lits);
                self.clause(&cl)?;
            }
            G::L(a)
        };
        self.memo.insert(key, g);
        Ok(g)
    }

    fn assert_node(&mut self, id: usize, env: [usize; 2]) -> Result<(), OverBudget> {
        if self.is_conjunctive(id) {
            for (c, env2) in self.children(id, env) {
                self.assert_node(c, env2)?;
            }
            return Ok(());
        }
        let lits = match &self.nodes[id].0 {
            Node::Or(_) | Node::Exists(..) => {
                let mut lits = Vec::new();
                for (c, env2) in self.children(id, env) {
                    match self.encode(c, env2)? {
                        G::T => return Ok(()),
                        G::F => {}
                        G::L(l) => lits.push(l),
                    }
                }
                lits
            }
            _ => match self.encode(id, env)? {
                G::T => return Ok(()),
                G::F => Vec::new(),
                G::L(l) => vec![l],
            },
        };
        self.clause(&lits)
    }

    /// Adds the constraint that the sentence holds.
    pub fn assert_sentence(&mut self, f: &Formula) -> Result<Result<(), OverBudget>, LogicError> {
        let g = nnf(&f.simplify());
        let id = self.compile(&g)?;
        Ok(self.assert_node(id, [0, 0]))
    }

    /// Irreflexivity and transitivity of `<`, or transitivity of `t`.
    pub fn assert_distinguished(&mut self) -> Result<(), OverBudget> {
        let n = self.n;
        match self.sig.distinguished() {
            Distinguished::None => {}
            Distinguished::PartialOrder => {
                for a in 0..n {
                    let d = self.dist_var(a, a);
                    self.clause(&[d.negative()])?;
                    for b in 0..n {
                        if a == b {
                            continue;
                        }
                        let ab = self.dist_var(a, b);
                        if a < b {
                            let ba = self.dist_var(b, a);
                            self.clause(&[ab.negative(), ba.negative()])?;
                        }
                        for c in 0..n {
                            if c == a || c == b {
                                continue;
                            }
                            let (bc, ac) = (self.dist_var(b, c), self.dist_var(a, c));
                            self.clause(&[ab.negative(), bc.negative(), ac.positive()])?;
                        }
                    }
                }
            }
            Distinguished::Transitive => {
                for a in 0..n {
                    for b in 0..n {
                        if a == b {
                            continue;
                        }
                        let ab = self.dist_var(a, b);
                        for c in 0..n {
                            if c == b {
                                continue;
                            }
                            let (bc, ac) = (self.dist_var(b, c), self.dist_var(a, c));
                            self.clause(&[ab.negative(), bc.negative(), ac.positive()])?;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn type_bits(&self, a: usize) -> Vec<Lit> {
        let mut v: Vec<Lit> = (0..self.sig.unary().len()).map(|p| self.unary_var(p, a).positive()).collect();
        v.extend((0..self.sig.binary().len()).map(|r| self.binary_var(r, a, a).positive()));
        if self.sig.distinguished() == Distinguished::Transitive {
            v.push(self.dist_var(a, a).positive());
        }
        v
    }

    /// Orders elements by their 1-type, lexicographically.
    ///
    /// Any structure can be permuted into this form, so no model is lost.
    pub fn assert_sorted_types(&mut self) -> Result<(), OverBudget> {
        for a in 0..self.n.saturating_sub(1) {
            let xs = self.type_bits(a);
            let ys = self.type_bits(a + 1);
            // e_i: the first i bits agree
            let mut e = self.fresh();
            self.clause(&[e])?;
            for (i, (&x, &y)) in xs.iter().zip(&ys).enumerate() {
                self.clause(&[!e, !x, y])?;
                if i + 1 < xs.len() {
                    let next = self.fresh();
                    self.clause(&[!e, x, y, next])?;
                    self.clause(&[!e, !x, !y, next])?;
                    e = next;
                }
            }
        }
        Ok(())
    }

    /// Forbids the given model on the primary atoms.
    pub fn block(&mut self, s: &Structure) -> Result<(), OverBudget> {
        let mut cl = Vec::new();
        let n = self.n;
        for p in 0..self.sig.unary().len() {
            for a in 0..n {
                cl.push(self.unary_var(p, a).lit(!s.unary(p, a)));
            }
        }
        for r in 0..self.sig.binary().len() {
            for a in 0..n {
                for b in 0..n {
                    cl.push(self.binary_var(r, a, b).lit(!s.binary(r, a, b)));
                }
            }
        }
        if self.sig.distinguished() != Distinguished::None {
            for a in 0..n {
                for b in 0..n {
                    cl.push(self.dist_var(a, b).lit(!s.dist(a, b)));
                }
            }
        }
        self.clause(&cl)
    }

    /// Runs the SAT solver; `Some(model)` on success.
    pub fn solve(&mut self) -> Option<Structure> {
        let sat = self.solver.solve().expect("solver is not interrupted");
        if !sat {
            return None;
        }
        let model = self.solver.model().expect("model after SAT");
        let mut value = vec![false; self.next_var];
        for l in model {
            if l.index() < value.len() {
                value[l.index()] = l.is_positive();
            }
        }
        let n = self.n;
        let mut s = Structure::new(self.sig.clone(), n);
        for p in 0..self.sig.unary().len() {
            for a in 0..n {
                s.set_unary(p, a, value[self.unary_var(p, a).index()]);
            }
        }
        for r in 0..self.sig.binary().len() {
            for a in 0..n {
                for b in 0..n {
                    s.set_binary(r, a, b, value[self.binary_var(r, a, b).index()]);
                }
            }
        }
        if self.sig.distinguished() != Distinguished::None {
            for a in 0..n {
                for b in 0..n {
                    s.set_dist(a, b, value[self.dist_var(a, b).index()]);
                }
            }
        }
        Some(s)
    }
}
