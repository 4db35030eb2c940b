//! Reduction of finite satisfiability for transitive normal forms with
//! bounded cliques to the partial-order case, and the two model maps.

use super::cells::{CellBudget, CellTable};
use super::{cliques_of, CliqueError};
use crate::logic::{bits_for, evaluate, holds, label_binary, label_unary, Distinguished, Formula, Signature, Structure, Var};
use crate::normal_forms::{StandardNf, TransRel, TransitiveNf};
use crate::syntax::write_structure;

/// `φ̂` together with everything needed to move models across.
#[derive(Clone, Debug)]
pub struct Cliquified {
    pub nf: StandardNf,
    /// `p̄ ∪ q̄ ∪ {<}`.
    pub sig: Signature,
    pub cell_preds: Vec<String>,
    pub pair_preds: Vec<String>,
    pub table: CellTable,
    pub source: TransitiveNf,
    pub source_sig: Signature,
}

impl Cliquified {
    pub fn multiplicity(&self) -> usize {
        self.nf.multiplicity()
    }

    pub fn to_formula(&self) -> Formula {
        self.nf.to_formula()
    }

    /// Largest clique the reduction speaks about.
    pub fn clique_bound(&self) -> usize {
        self.table.max_size
    }

    fn cell(&self, j: usize, v: Var) -> Formula {
        label_unary(&self.cell_preds, j, v)
    }

    fn pair(&self, k: usize, a: Var, b: Var) -> Formula {
        label_binary(&self.pair_preds, k, a, b)
    }
}

fn any(fs: Vec<Formula>) -> Formula {
    if fs.is_empty() {
        Formula::False
    } else {
        Formula::Or(fs)
    }
}

/// The order between `a` and `b` that `𝔰` asks for, with `a ≠ b` implied.
fn order_formula(rel: TransRel, a: Var, b: Var) -> Formula {
    match rel {
        TransRel::Less => Formula::Less(a, b),
        TransRel::Greater => Formula::Less(b, a),
        _ => Formula::And(vec![Formula::not(Formula::Less(a, b)), Formula::not(Formula::Less(b, a))]),
    }
}

/// `φ̂`: a standard normal form over `p̄ ∪ q̄ ∪ {<}` with multiplicity `4mn`,
/// finitely satisfiable iff `φ` has a finite model with at least two cliques,
/// each of at most `n` elements.
///
/// Every element of a model of `φ̂` stands for a clique, labelled by a cell
/// via `p̄`; every pair of distinct elements is labelled by a diatom via `q̄`.
pub fn cliquify(phi: &TransitiveNf, sig: &Signature, n: usize, budget: &CellBudget) -> Result<Cliquified, CliqueError> {
    phi.validate()?;
    let table = CellTable::build(sig, n, budget)?;
    let (m_cells, m_pairs) = (table.cells.len(), table.diatoms.len());
    let mut hat = Signature::empty(Distinguished::PartialOrder);
    let cell_preds: Vec<String> = (0..bits_for(m_cells)).map(|_| hat.fresh_unary("cell")).collect();
    let pair_preds: Vec<String> = (0..bits_for(m_pairs)).map(|_| hat.fresh_binary("pair")).collect();
    let mut c = Cliquified {
        nf: StandardNf { eta: Formula::True, thetas: Vec::new() },
        sig: hat,
        cell_preds,
        pair_preds,
        table,
        source: phi.clone(),
        source_sig: sig.clone(),
    };
    let (x, y) = (Var::X, Var::Y);
    let t = &c.table;
    let universal = |s: TransRel| {
        Formula::forall(x, Formula::forall(y, Formula::implies(s.formula(x, y), phi.eta(s).clone())))
    };
    let sat = |st: &Structure, f: &Formula| holds(st, f).expect("formula over the cell signature");

    // ψ1
    let mut eta = vec![
        any((0..m_cells).map(|j| c.cell(j, x)).collect()),
        any((0..m_pairs).map(|k| c.pair(k, x, y)).collect()),
    ];
    for (k, d) in t.diatoms.iter().enumerate() {
        let q = c.pair(k, x, y);
        // ψ2
        eta.push(Formula::implies(q.clone(), Formula::And(vec![c.cell(d.left, x), c.cell(d.right, y)])));
        // ψ3
        eta.push(Formula::implies(q.clone(), c.pair(d.inverse, y, x)));
        // ψ4
        eta.push(Formula::implies(q, order_formula(d.rel, x, y)));
    }
    // ψ5
    let within = universal(TransRel::Equiv);
    eta.push(any((0..m_cells).filter(|&j| sat(&t.cells[j], &within)).map(|j| c.cell(j, x)).collect()));
    for s in [TransRel::Less, TransRel::Greater, TransRel::Incomparable] {
        let across = universal(s);
        eta.push(any(
            (0..m_pairs).filter(|&k| sat(&t.diatoms[k].structure, &across)).map(|k| c.pair(k, x, y)).collect(),
        ));
    }
    // ψ6
    let mus: Vec<Formula> = (0..phi.multiplicity())
        .map(|h| {
            let w = phi.witness(h, TransRel::Equiv);
            let Some(g) = &w.guard else { return Formula::True };
            let f = Formula::forall(
                x,
                Formula::exists(
                    y,
                    Formula::implies(
                        Formula::unary(g, x),
                        Formula::And(vec![TransRel::Equiv.formula(x, y), w.theta.clone()]),
                    ),
                ),
            );
            any((0..m_cells).filter(|&j| sat(&t.cells[j], &f)).map(|j| c.cell(j, x)).collect())
        })
        .collect();
    eta.extend(mus.iter().cloned());

    // ω, with the `≡` rows restating ψ6 so that the multiplicity is 4mn
    let mut thetas = Vec::new();
    for h in 0..phi.multiplicity() {
        for s in TransRel::ALL {
            let w = phi.witness(h, s);
            for i in 0..n {
                let nu = match &w.guard {
                    None => Formula::False,
                    Some(g) => {
                        let p = sig.unary_index(g).ok_or_else(|| CliqueError::BadInput(format!("guard `{g}` is not in the signature")))?;
                        any((0..m_cells)
                            .filter(|&j| i < t.cells[j].size() && t.cells[j].unary(p, i))
                            .map(|j| c.cell(j, x))
                            .collect())
                    }
                };
                let target = if s == TransRel::Equiv {
                    mus[h].clone()
                } else {
                    let xi: Vec<Formula> = (0..n)
                        .map(|i2| {
                            any((0..m_pairs)
                                .filter(|&k| {
                                    let d = &t.diatoms[k];
                                    d.rel == s
                                        && w.guard.is_some()
                                        && i < d.left_size
                                        && i2 < d.right_size()
                                        && evaluate(&d.structure, &w.theta, [Some(i), Some(d.left_size + i2)])
                                            .expect("θ over the cell signature")
                                })
                                .map(|k| c.pair(k, x, y))
                                .collect())
                        })
                        .collect();
                    any(xi)
                };
                thetas.push(Formula::implies(nu, target));
            }
        }
    }
    c.nf = StandardNf { eta: Formula::And(eta), thetas };
    c.nf.validate()?;
    Ok(c)
}

fn read_label(s: &Structure, x: usize, y: Option<usize>, width: usize) -> usize {
    (0..width).fold(0, |acc, i| {
        let bit = match y {
            None => s.unary(i, x),
            Some(y) => s.binary(i, x, y),
        };
        acc << 1 | usize::from(bit)
    })
}

/// `Â`: one element per clique of a model of `φ`, labelled by the cell and
/// diatoms it realises, ordered by `<_T`.
pub fn abstract_model(c: &Cliquified, a: &Structure) -> Result<Structure, CliqueError> {
    if a.signature() != &c.source_sig {
        return Err(CliqueError::BadInput("the structure is not over the signature of φ".into()));
    }
    if !holds(a, &c.source.to_formula())? {
        return Err(CliqueError::NotAModel);
    }
    let d = cliques_of(a)?;
    if d.len() < 2 {
        return Err(CliqueError::SingleClique);
    }
    if d.largest() > c.clique_bound() {
        return Err(CliqueError::CliqueTooLarge { size: d.largest(), bound: c.clique_bound() });
    }
    let k = d.len();
    let mut out = Structure::new(c.sig.clone(), k);
    let (s_bits, t_bits) = (c.cell_preds.len(), c.pair_preds.len());
    for i in 0..k {
        let j = c
            .table
            .cell_of(&a.substructure(&d.cliques[i]))
            .ok_or_else(|| CliqueError::Internal(format!("clique {i} matches no cell")))?;
        for b in 0..s_bits {
            out.set_unary(b, i, j >> (s_bits - 1 - b) & 1 == 1);
        }
        for i2 in (0..k).filter(|&i2| i2 != i) {
            let elems: Vec<usize> = d.cliques[i].iter().chain(&d.cliques[i2]).copied().collect();
            let kk = c
                .table
                .diatom_of(&a.substructure(&elems), d.cliques[i].len())
                .ok_or_else(|| CliqueError::Internal(format!("cliques {i}, {i2} match no diatom")))?;
            for b in 0..t_bits {
                out.set_binary(b, i, i2, kk >> (t_bits - 1 - b) & 1 == 1);
            }
            out.set_dist(i, i2, d.less(i, i2));
        }
    }
    if !holds(&out, &c.to_formula())? {
        return Err(CliqueError::Property {
            property: "abstract",
            detail: "the clique structure does not satisfy φ̂".into(),
            bundle: write_structure(&out),
        });
    }
    Ok(out)
}

/// `Ǎ`: replaces each element of a model of `φ̂` by a copy of its cell and
/// joins the copies as the diatom labels say.
pub fn expand_model(c: &Cliquified, b: &Structure) -> Result<Structure, CliqueError> {
    if b.signature() != &c.sig {
        return Err(CliqueError::BadInput("the structure is not over the signature of φ̂".into()));
    }
    if !b.check_distinguished().is_empty() || !holds(b, &c.to_formula())? {
        return Err(CliqueError::NotAModel);
    }
    let (s_bits, t_bits) = (c.cell_preds.len(), c.pair_preds.len());
    let labels: Vec<usize> = (0..b.size()).map(|x| read_label(b, x, None, s_bits)).collect();
    let cells: Vec<&Structure> = labels
        .iter()
        .map(|&j| c.table.cells.get(j).ok_or_else(|| CliqueError::Internal(format!("cell label {j} out of range"))))
        .collect::<Result<_, _>>()?;
    let mut offset = vec![0];
    for cell in &cells {
        offset.push(offset.last().unwrap() + cell.size());
    }
    let mut out = Structure::new(c.source_sig.clone(), *offset.last().unwrap());
    let clash = |detail: String, s: &Structure| CliqueError::Property {
        property: "expand",
        detail,
        bundle: write_structure(s),
    };
    for (x, cell) in cells.iter().enumerate() {
        for u in 0..cell.size() {
            out.set_one_type(offset[x] + u, &cell.one_type(u));
            for v in (0..cell.size()).filter(|&v| v != u) {
                out.set_cross(offset[x] + u, offset[x] + v, &cell.two_type(u, v));
            }
        }
    }
    for x in 0..b.size() {
        for y in (x + 1)..b.size() {
            let k = read_label(b, x, Some(y), t_bits);
            let back = read_label(b, y, Some(x), t_bits);
            let d = c.table.diatoms.get(k).ok_or_else(|| clash(format!("pair label {k} out of range"), b))?;
            if d.left != labels[x] || d.right != labels[y] || d.inverse != back {
                return Err(clash(format!("the label of ({x},{y}) disagrees with its cells"), b));
            }
            for u in 0..d.left_size {
                for v in 0..d.right_size() {
                    out.set_cross(offset[x] + u, offset[y] + v, &d.structure.two_type(u, d.left_size + v));
                }
            }
        }
    }
    if let Some(v) = out.check_distinguished().first() {
        return Err(clash(format!("t is not transitive: {v}"), &out));
    }
    if !holds(&out, &c.source.to_formula())? {
        return Err(clash("the expanded structure does not satisfy φ".into(), &out));
    }
    Ok(out)
}
