use super::formula::{Formula, Var};
use super::signature::Distinguished;
use super::structure::Structure;
use super::LogicError;

/// Values of the two variables; `None` means unassigned.
pub type Assignment = [Option<usize>; 2];

/// Formula with predicate names resolved to table indices.
enum Node {
    Const(bool),
    Unary(usize, Var),
    Binary(usize, Var, Var),
    Dist(Var, Var),
    Eq(Var, Var),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Forall(Var, Box<Node>),
    Exists(Var, Box<Node>),
}

fn compile(s: &Structure, f: &Formula) -> Result<Node, LogicError> {
    let sig = s.signature();
    let arity_error = |name: &str, used| match sig.arity(name) {
        Some(declared) => LogicError::ArityMismatch {
            name: name.to_string(),
            used,
            declared,
        },
        None => LogicError::UnknownPredicate(name.to_string()),
    };
    Ok(match f {
        Formula::True => Node::Const(true),
        Formula::False => Node::Const(false),
        Formula::Unary(p, v) => Node::Unary(sig.unary_index(p).ok_or_else(|| arity_error(p, 1))?, *v),
        Formula::Binary(r, a, b) => {
            Node::Binary(sig.binary_index(r).ok_or_else(|| arity_error(r, 2))?, *a, *b)
        }
        Formula::Less(a, b) => {
            if sig.distinguished() != Distinguished::PartialOrder {
                return Err(LogicError::MissingDistinguished("<"));
            }
            Node::Dist(*a, *b)
        }
        Formula::Trans(a, b) => {
            if sig.distinguished() != Distinguished::Transitive {
                return Err(LogicError::MissingDistinguished("t"));
            }
            Node::Dist(*a, *b)
        }
        Formula::Eq(a, b) => Node::Eq(*a, *b),
        Formula::Not(g) => Node::Not(Box::new(compile(s, g)?)),
        Formula::And(gs) => Node::And(gs.iter().map(|g| compile(s, g)).collect::<Result<_, _>>()?),
        Formula::Or(gs) => Node::Or(gs.iter().map(|g| compile(s, g)).collect::<Result<_, _>>()?),
        Formula::Implies(a, b) => Node::Implies(Box::new(compile(s, a)?), Box::new(compile(s, b)?)),
        Formula::Iff(a, b) => Node::Iff(Box::new(compile(s, a)?), Box::new(compile(s, b)?)),
        Formula::Forall(v, g) => Node::Forall(*v, Box::new(compile(s, g)?)),
        Formula::Exists(v, g) => Node::Exists(*v, Box::new(compile(s, g)?)),
    })
}

fn get(env: &Assignment, v: Var) -> Result<usize, LogicError> {
    env[v.index()].ok_or(LogicError::Unassigned(v))
}

fn run(s: &Structure, n: &Node, env: &mut Assignment) -> Result<bool, LogicError> {
    Ok(match n {
        Node::Const(b) => *b,
        Node::Unary(p, v) => s.unary(*p, get(env, *v)?),
        Node::Binary(r, a, b) => s.binary(*r, get(env, *a)?, get(env, *b)?),
        Node::Dist(a, b) => s.dist(get(env, *a)?, get(env, *b)?),
        Node::Eq(a, b) => get(env, *a)? == get(env, *b)?,
        Node::Not(g) => !run(s, g, env)?,
        Node::And(gs) => {
            for g in gs {
                if !run(s, g, env)? {
                    return Ok(false);
                }
            }
            true
        }
        Node::Or(gs) => {
            for g in gs {
                if run(s, g, env)? {
                    return Ok(true);
                }
            }
            false
        }
        Node::Implies(a, b) => !run(s, a, env)? || run(s, b, env)?,
        Node::Iff(a, b) => run(s, a, env)? == run(s, b, env)?,
        Node::Forall(v, g) | Node::Exists(v, g) => {
            let want = matches!(n, Node::Exists(..));
            let saved = env[v.index()];
            let mut result = !want;
            for e in 0..s.size() {
                env[v.index()] = Some(e);
                if run(s, g, env)? == want {
                    result = want;
                    break;
                }
            }
            env[v.index()] = saved;
            result
        }
    })
}

/// Truth value of `f` in `s` under `asg`.
pub fn evaluate(s: &Structure, f: &Formula, asg: Assignment) -> Result<bool, LogicError> {
    let node = compile(s, f)?;
    for a in asg.iter().flatten() {
        if *a >= s.size() {
            return Err(LogicError::ElementOutOfRange(*a));
        }
    }
    let mut env = asg;
    run(s, &node, &mut env)
}

/// Truth value of a sentence.
pub fn holds(s: &Structure, f: &Formula) -> Result<bool, LogicError> {
    evaluate(s, f, [None, None])
}

/// Reusable compiled form for evaluating one formula many times on one structure.
pub struct Evaluator<'a> {
    s: &'a Structure,
    node: Node,
}

impl<'a> Evaluator<'a> {
    pub fn new(s: &'a Structure, f: &Formula) -> Result<Self, LogicError> {
        Ok(Evaluator { s, node: compile(s, f)? })
    }

    pub fn eval(&self, asg: Assignment) -> Result<bool, LogicError> {
        let mut env = asg;
        run(self.s, &self.node, &mut env)
    }

    pub fn pair(&self, a: usize, b: usize) -> bool {
        self.eval([Some(a), Some(b)]).expect("free variables are assigned")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Signature;

    #[test]
    fn quantifiers_and_order() {
        let sig = Signature::new(["p"], Vec::<String>::new(), Distinguished::PartialOrder).unwrap();
        let mut s = Structure::new(sig, 3);
        s.set_dist(0, 1, true);
        s.set_unary(0, 1, true);
        // every p-element has something below it
        let f = Formula::forall(
            Var::X,
            Formula::implies(
                Formula::unary("p", Var::X),
                Formula::exists(Var::Y, Formula::Less(Var::Y, Var::X)),
            ),
        );
        assert!(holds(&s, &f).unwrap());
        s.set_unary(0, 2, true);
        assert!(!holds(&s, &f).unwrap());
    }

    #[test]
    fn errors() {
        let sig = Signature::new(["p"], Vec::<String>::new(), Distinguished::None).unwrap();
        let s = Structure::new(sig, 2);
        assert_eq!(
            holds(&s, &Formula::exists(Var::X, Formula::unary("q", Var::X))),
            Err(LogicError::UnknownPredicate("q".into()))
        );
        assert_eq!(
            holds(&s, &Formula::unary("p", Var::Y)),
            Err(LogicError::Unassigned(Var::Y))
        );
        assert!(holds(&s, &Formula::exists(Var::X, Formula::Less(Var::X, Var::X))).is_err());
        assert_eq!(
            evaluate(&s, &Formula::unary("p", Var::X), [Some(0), None]),
            Ok(false)
        );
    }
}
