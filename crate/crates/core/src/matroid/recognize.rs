//! Recognition of slack matrices of 2-level matroid base polytopes.
//!
//! A connected matroid with a 2-level base polytope is built from uniform
//! matroids by 2-sums, and a disconnected one is a 1-sum of its components.
//! On the slack matrix these are 1-products and 2-products, so the
//! recognizer peels off products until every piece is a hypersimplex slack
//! matrix:
//!
//! 1. a piece that is a hypersimplex slack matrix becomes a leaf;
//! 2. otherwise, a piece that is a 1-product is split into its irreducible
//!    factors;
//! 3. otherwise, 2-product certificates of the piece are enumerated
//!    (special rows ascending, then unions of joint zero atoms). For a
//!    certificate `(S1, x1), (S2, y1)` the children are `S1` plus the
//!    complement of row `x1` and `S2` plus the complement of `y1`, with
//!    duplicate rows dropped. The special row and its complement are pinned
//!    in the children and never chosen as special rows again.
//!
//! Every choice is backtracked if anything below or after it fails. Once a
//! full decomposition exists, each leaf gets a color saying whether it is
//! read as `U_{d,k}` or as its dual `U_{d,d-k}`. Each 2-product links the
//! leaves holding its two special rows, and the rows must end up on opposite
//! sides (one `x_p >= 0` row, one `x_p <= 1` row), which fixes the parity of
//! the two colors. The constraint graph is a forest, solved by propagation.
//! Identity leaves get free colors like the rest: their single row per
//! element can be read as `x_e >= 0` of `U_{d,1}` or as `x_e <= 1` of
//! `U_{d,d-1}`. The result is accepted only if the column bases match the
//! rebuilt matroid and its slack matrix is isomorphic to the input.

use std::cell::Cell;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::rc::Rc;

use num_traits::One;

use super::{
    expr_to_bases, expr_to_slack, recognize_hypersimplex, Element, HypersimplexForm, MatroidExpr,
    Side,
};
use crate::error::{Error, Result};
use crate::info::UnionFind;
use crate::iso::is_isomorphic;
use crate::matrix::{complement_row, Matrix, RowSubset};
use crate::product::{factorize_irreducible, joint_zero_atoms};
use crate::two_product::{sides, two_product_cert, TwoProductCert};

/// What a row of the input matrix is, in terms of the recovered matroid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowRole {
    /// The facet `x_e >= 0` or `x_e <= 1` of a ground element.
    Element { label: Element, side: Side },
    /// A row created by a 2-sum along the glue element `label`, which is not
    /// part of the final ground set.
    Glue { label: Element },
}

/// Successful recognition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognizedMatroid {
    pub expr: MatroidExpr,
    /// Role of every row of the input.
    pub row_roles: Vec<RowRole>,
    /// Base (sorted labels) of every column of the input.
    pub column_bases: Vec<Vec<Element>>,
    /// Number of rejected 2-product certificates.
    pub backtracks: usize,
}

/// Search limit on the number of pieces examined.
const STEP_LIMIT: usize = 200_000;

/// Largest number of joint zero atoms for which every union is tried; above
/// it only single atoms are split off.
const ALL_UNIONS_LIMIT: usize = 8;

/// Recognizes the slack matrix of a 2-level matroid base polytope, up to row
/// and column permutations.
///
/// The input must be 0/1 with no constant rows and distinct rows and
/// columns; violations are reported as [`Error::Precondition`]. `Ok(None)`
/// means the matrix is not recognized. A search that runs past
/// `STEP_LIMIT` pieces is reported as [`Error::GuardExceeded`].
pub fn recognize_2level_matroid_slack(s: &Matrix) -> Result<Option<RecognizedMatroid>> {
    check_preconditions(s)?;
    let root = Rc::new(Piece {
        s: s.clone(),
        parent_row: (0..s.nrows()).map(Some).collect(),
        pinned: vec![false; s.nrows()],
        synthetic: vec![false; s.nrows()],
    });
    let ctx = Ctx {
        steps: Cell::new(0),
        backtracks: Cell::new(0),
    };
    let found = decompose(&ctx, root.clone(), &mut |node| {
        let out = finish(s, node, ctx.backtracks.get());
        if out.is_none() {
            ctx.backtracks.set(ctx.backtracks.get() + 1);
        }
        out
    });
    if found.is_none() && ctx.steps.get() > STEP_LIMIT {
        return Err(Error::GuardExceeded {
            what: "matroid search steps",
            value: ctx.steps.get(),
            limit: STEP_LIMIT,
        });
    }
    Ok(found)
}

fn check_preconditions(s: &Matrix) -> Result<()> {
    if !s.is_zero_one() {
        return Err(Error::Precondition("entries must be 0 or 1".into()));
    }
    if let Some(i) = (0..s.nrows()).find(|&i| !s.is_split_row(i)) {
        return Err(Error::Precondition(format!("row {i} is constant")));
    }
    if s.dedupe_rows().0.nrows() != s.nrows() {
        return Err(Error::Precondition("rows must be distinct".into()));
    }
    if s.transpose().dedupe_rows().0.nrows() != s.ncols() {
        return Err(Error::Precondition("columns must be distinct".into()));
    }
    Ok(())
}

struct Ctx {
    steps: Cell<usize>,
    backtracks: Cell<usize>,
}

/// A matrix met during the decomposition, with its rows traced to the
/// parent piece.
#[derive(Debug)]
struct Piece {
    s: Matrix,
    /// Row of the parent piece, or `None` for an added complement row.
    parent_row: Vec<Option<usize>>,
    pinned: Vec<bool>,
    synthetic: Vec<bool>,
}

impl Piece {
    fn size(&self) -> usize {
        self.s.nrows() + self.s.ncols()
    }

    fn child_row(&self, parent: usize) -> Option<usize> {
        self.parent_row.iter().position(|&r| r == Some(parent))
    }
}

#[derive(Debug, Clone)]
enum Node {
    Leaf {
        piece: Rc<Piece>,
        form: HypersimplexForm,
        /// Leaf matrix row -> piece row.
        rows: Vec<usize>,
        matrix: Matrix,
    },
    OneSum {
        piece: Rc<Piece>,
        children: Vec<Node>,
    },
    TwoSum {
        piece: Rc<Piece>,
        special: usize,
        children: Box<[Node; 2]>,
        /// Special row inside each child piece.
        x1: usize,
        y1: usize,
    },
}

impl Node {
    fn piece(&self) -> &Rc<Piece> {
        match self {
            Node::Leaf { piece, .. } | Node::OneSum { piece, .. } | Node::TwoSum { piece, .. } => {
                piece
            }
        }
    }
}

type Found = RecognizedMatroid;

fn decompose(ctx: &Ctx, piece: Rc<Piece>, k: &mut dyn FnMut(Node) -> Option<Found>) -> Option<Found> {
    ctx.steps.set(ctx.steps.get() + 1);
    if ctx.steps.get() > STEP_LIMIT {
        return None;
    }

    if let Some(leaf) = as_leaf(&piece) {
        return k(leaf);
    }

    let fact = factorize_irreducible(&piece.s);
    if fact.len() >= 2 {
        let children: Vec<Rc<Piece>> = fact
            .blocks
            .iter()
            .zip(&fact.factors)
            .map(|(block, factor)| {
                Rc::new(Piece {
                    s: factor.clone(),
                    parent_row: block.indices().iter().map(|&r| Some(r)).collect(),
                    pinned: block.indices().iter().map(|&r| piece.pinned[r]).collect(),
                    synthetic: block.indices().iter().map(|&r| piece.synthetic[r]).collect(),
                })
            })
            .collect();
        return decompose_all(ctx, &children, Vec::new(), &mut |nodes| {
            k(Node::OneSum {
                piece: piece.clone(),
                children: nodes,
            })
        });
    }

    let m = piece.s.nrows();
    if m < 3 {
        return None;
    }
    for r in 0..m {
        if piece.pinned[r] || !piece.s.is_split_row(r) {
            continue;
        }
        for cert in certificates_at(&piece.s, r) {
            let (c1, c2) = children_of(&piece, &cert);
            if c1.size() >= piece.size() || c2.size() >= piece.size() {
                continue;
            }
            let x1 = c1.child_row(r).expect("special row is in both children");
            let y1 = c2.child_row(r).expect("special row is in both children");
            let found = decompose(ctx, c1, &mut |n1| {
                decompose(ctx, c2.clone(), &mut |n2| {
                    k(Node::TwoSum {
                        piece: piece.clone(),
                        special: r,
                        children: Box::new([n1.clone(), n2]),
                        x1,
                        y1,
                    })
                })
            });
            if found.is_some() {
                return found;
            }
            ctx.backtracks.set(ctx.backtracks.get() + 1);
            if ctx.steps.get() > STEP_LIMIT {
                return None;
            }
        }
    }
    None
}

fn decompose_all(
    ctx: &Ctx,
    pieces: &[Rc<Piece>],
    acc: Vec<Node>,
    k: &mut dyn FnMut(Vec<Node>) -> Option<Found>,
) -> Option<Found> {
    let Some((first, rest)) = pieces.split_first() else {
        return k(acc);
    };
    decompose(ctx, first.clone(), &mut |node| {
        let mut acc = acc.clone();
        acc.push(node);
        decompose_all(ctx, rest, acc, k)
    })
}

fn as_leaf(piece: &Rc<Piece>) -> Option<Node> {
    let all: Vec<usize> = (0..piece.s.nrows()).collect();
    if let Some(form) = recognize_hypersimplex(&piece.s) {
        return Some(Node::Leaf {
            piece: piece.clone(),
            form,
            rows: all,
            matrix: piece.s.clone(),
        });
    }
    if !piece.synthetic.iter().any(|&b| b) {
        return None;
    }
    let real: Vec<usize> = all.into_iter().filter(|&i| !piece.synthetic[i]).collect();
    let matrix = piece.s.select_rows(&real).ok()?;
    let form = recognize_hypersimplex(&matrix)?;
    Some(Node::Leaf {
        piece: piece.clone(),
        form,
        rows: real,
        matrix,
    })
}

/// Verified 2-product certificates with special row `r`, one per union of
/// joint zero atoms of the two sides.
fn certificates_at(s: &Matrix, r: usize) -> Vec<TwoProductCert> {
    let (s0, s1) = sides(s, r);
    let atoms = joint_zero_atoms(&[&s0, &s1]);
    let t = atoms.len();
    if t < 2 {
        return Vec::new();
    }
    let masks: Vec<Vec<usize>> = if t <= ALL_UNIONS_LIMIT {
        let mut masks: Vec<u32> = (1..(1u32 << t) - 1).filter(|m| m & 1 == 1).collect();
        masks.sort_by_key(|&m| {
            let ones = m.count_ones() as usize;
            (ones.min(t - ones), m)
        });
        masks
            .into_iter()
            .map(|m| (0..t).filter(|&i| m >> i & 1 == 1).collect())
            .collect()
    } else {
        (0..t).map(|i| vec![i]).collect()
    };
    masks
        .into_iter()
        .filter_map(|chosen| {
            let mut x: Vec<usize> = chosen.iter().flat_map(|&i| atoms[i].iter().copied()).collect();
            x.sort_unstable();
            two_product_cert(s, r, &RowSubset::from_sorted(x))
        })
        .collect()
}

/// Child pieces of a 2-product certificate, each with the complement of its
/// special row added unless already present.
fn children_of(piece: &Piece, cert: &TwoProductCert) -> (Rc<Piece>, Rc<Piece>) {
    let r = cert.special_row;
    let m = piece.s.nrows();
    let rows1: Vec<usize> = (0..m).filter(|&i| i == r || cert.x.contains(i)).collect();
    let rows2: Vec<usize> = (0..m).filter(|&i| i == r || !cert.x.contains(i)).collect();
    let build = |factor: &Matrix, special: usize, rows: &[usize]| -> Rc<Piece> {
        let mut parent_row: Vec<Option<usize>> = rows.iter().map(|&i| Some(i)).collect();
        let mut pinned: Vec<bool> = rows.iter().map(|&i| piece.pinned[i]).collect();
        let mut synthetic: Vec<bool> = rows.iter().map(|&i| piece.synthetic[i]).collect();
        pinned[special] = true;
        let comp = complement_row(factor.row(special)).expect("special rows are 0/1");
        let s = match (0..factor.nrows()).find(|&i| factor.row(i) == comp.as_slice()) {
            Some(i) => {
                pinned[i] = true;
                factor.clone()
            }
            None => {
                parent_row.push(None);
                pinned.push(true);
                synthetic.push(true);
                factor.push_row(&comp).expect("row length matches")
            }
        };
        Rc::new(Piece {
            s,
            parent_row,
            pinned,
            synthetic,
        })
    };
    (
        build(&cert.s1, cert.x1, &rows1),
        build(&cert.s2, cert.y1, &rows2),
    )
}

/// Flattened decomposition with leaf numbering.
struct Tree {
    nodes: Vec<TNode>,
    /// Node index of every leaf, in depth-first order.
    leaves: Vec<usize>,
    /// First global element index of every leaf.
    offsets: Vec<usize>,
    elements: usize,
}

struct TNode {
    node: Node,
    children: Vec<usize>,
    leaf: Option<usize>,
}

impl Tree {
    fn build(root: Node) -> Tree {
        let mut tree = Tree {
            nodes: Vec::new(),
            leaves: Vec::new(),
            offsets: Vec::new(),
            elements: 0,
        };
        tree.add(root);
        tree
    }

    fn add(&mut self, node: Node) -> usize {
        let idx = self.nodes.len();
        self.nodes.push(TNode {
            node: node.clone(),
            children: Vec::new(),
            leaf: None,
        });
        let children: Vec<Node> = match node {
            Node::Leaf { ref form, .. } => {
                self.nodes[idx].leaf = Some(self.leaves.len());
                self.leaves.push(idx);
                self.offsets.push(self.elements);
                self.elements += form.d;
                Vec::new()
            }
            Node::OneSum { children, .. } => children,
            Node::TwoSum { children, .. } => children.to_vec(),
        };
        let ids = children.into_iter().map(|c| self.add(c)).collect();
        self.nodes[idx].children = ids;
        idx
    }

    fn leaf_form(&self, leaf: usize) -> &HypersimplexForm {
        match &self.nodes[self.leaves[leaf]].node {
            Node::Leaf { form, .. } => form,
            _ => unreachable!("leaf index points at a leaf"),
        }
    }

    fn piece(&self, idx: usize) -> &Rc<Piece> {
        self.nodes[idx].node.piece()
    }

    /// `(leaf, leaf row)` holding row `row` of node `idx`'s piece. For the
    /// special row of a 2-product the first child is followed.
    fn locate(&self, idx: usize, row: usize) -> Option<(usize, usize)> {
        let t = &self.nodes[idx];
        if let Node::Leaf { rows, .. } = &t.node {
            let lr = rows.iter().position(|&r| r == row)?;
            return Some((t.leaf?, lr));
        }
        t.children.iter().find_map(|&c| {
            let cr = self.piece(c).child_row(row)?;
            self.locate(c, cr)
        })
    }
}

fn finish(s: &Matrix, root: Node, backtracks: usize) -> Option<Found> {
    let tree = Tree::build(root);
    let nleaves = tree.leaves.len();
    let total = tree.elements;
    let gid = |leaf: usize, e: usize| tree.offsets[leaf] + e;

    // glue identifications and color parities
    let mut uf = UnionFind::new(total);
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); nleaves];
    let mut glue_of_node: HashMap<usize, usize> = HashMap::new();
    for (idx, t) in tree.nodes.iter().enumerate() {
        let Node::TwoSum { x1, y1, .. } = &t.node else {
            continue;
        };
        let (la, ra) = tree.locate(t.children[0], *x1)?;
        let (lb, rb) = tree.locate(t.children[1], *y1)?;
        let (ea, sa) = tree.leaf_form(la).rows[ra];
        let (eb, sb) = tree.leaf_form(lb).rows[rb];
        uf.union(gid(la, ea), gid(lb, eb));
        glue_of_node.insert(idx, gid(la, ea));
        // colors c_a, c_b must satisfy (s_a ^ c_a) != (s_b ^ c_b)
        let differ = (sa == Side::Upper) == (sb == Side::Upper);
        adj[la].push((lb, differ));
        adj[lb].push((la, differ));
    }

    let mut color: Vec<Option<bool>> = vec![None; nleaves];
    for start in 0..nleaves {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            let ca = color[a]?;
            for &(b, differ) in &adj[a] {
                let want = ca ^ differ;
                match color[b] {
                    None => {
                        color[b] = Some(want);
                        queue.push_back(b);
                    }
                    Some(cb) if cb != want => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let color: Vec<bool> = color.into_iter().map(|c| c.unwrap_or(false)).collect();

    let mut class_size = vec![0usize; total];
    for g in 0..total {
        let r = uf.find(g);
        class_size[r] += 1;
    }
    let mut label_of_root: HashMap<usize, Element> = HashMap::new();
    let mut labels = vec![0 as Element; total];
    for (g, label) in labels.iter_mut().enumerate() {
        let r = uf.find(g);
        let next = label_of_root.len() as Element;
        *label = *label_of_root.entry(r).or_insert(next);
    }
    let glued: Vec<bool> = (0..total).map(|g| class_size[uf.find(g)] > 1).collect();

    let forms: Vec<HypersimplexForm> = (0..nleaves)
        .map(|l| {
            let f = tree.leaf_form(l);
            if color[l] {
                f.flipped()
            } else {
                f.clone()
            }
        })
        .collect();

    let expr = build_expr(&tree, 0, &forms, &labels, &glue_of_node);
    expr.validate().ok()?;

    let bases = node_bases(&tree, 0, &forms, &labels, &glue_of_node);

    let mut row_roles = Vec::with_capacity(s.nrows());
    for i in 0..s.nrows() {
        row_roles.push(row_role(&tree, 0, i, &forms, &labels, &glued, &glue_of_node)?);
    }

    let matroid = expr_to_bases(&expr).ok()?;
    let got: BTreeSet<Vec<Element>> = bases.iter().cloned().collect();
    if got.len() != s.ncols() || &got != matroid.bases() {
        return None;
    }
    let rebuilt = expr_to_slack(&expr).ok()?;
    is_isomorphic(&rebuilt, s)?;
    Some(RecognizedMatroid {
        expr,
        row_roles,
        column_bases: bases,
        backtracks,
    })
}

fn build_expr(
    tree: &Tree,
    idx: usize,
    forms: &[HypersimplexForm],
    labels: &[Element],
    glue_of_node: &HashMap<usize, usize>,
) -> MatroidExpr {
    let t = &tree.nodes[idx];
    let rec = |c: usize| build_expr(tree, c, forms, labels, glue_of_node);
    match &t.node {
        Node::Leaf { .. } => {
            let leaf = t.leaf.expect("leaf node");
            let f = &forms[leaf];
            MatroidExpr::Leaf {
                d: f.d,
                k: f.k,
                labels: (0..f.d).map(|e| labels[tree.offsets[leaf] + e]).collect(),
            }
        }
        Node::OneSum { .. } => MatroidExpr::OneSum(t.children.iter().map(|&c| rec(c)).collect()),
        Node::TwoSum { .. } => MatroidExpr::TwoSum {
            left: Box::new(rec(t.children[0])),
            right: Box::new(rec(t.children[1])),
            glue: labels[glue_of_node[&idx]],
        },
    }
}

/// Base of every column of node `idx`'s piece.
fn node_bases(
    tree: &Tree,
    idx: usize,
    forms: &[HypersimplexForm],
    labels: &[Element],
    glue_of_node: &HashMap<usize, usize>,
) -> Vec<Vec<Element>> {
    let t = &tree.nodes[idx];
    let piece = tree.piece(idx);
    if let Node::Leaf { matrix, .. } = &t.node {
        let leaf = t.leaf.expect("leaf node");
        return (0..matrix.ncols())
            .map(|j| {
                let mut b: Vec<Element> = forms[leaf]
                    .column_base(matrix, j)
                    .into_iter()
                    .map(|e| labels[tree.offsets[leaf] + e])
                    .collect();
                b.sort_unstable();
                b
            })
            .collect();
    }
    let glue = glue_of_node.get(&idx).map(|&g| labels[g]);
    let mut out: Vec<BTreeSet<Element>> = vec![BTreeSet::new(); piece.s.ncols()];
    for &c in &t.children {
        let child = tree.piece(c);
        let child_bases = node_bases(tree, c, forms, labels, glue_of_node);
        let traced: Vec<(usize, usize)> = child
            .parent_row
            .iter()
            .enumerate()
            .filter_map(|(ci, pr)| pr.map(|p| (ci, p)))
            .collect();
        let lookup: HashMap<Vec<bool>, usize> = (0..child.s.ncols())
            .map(|j| {
                let key = traced.iter().map(|&(ci, _)| child.s.get(ci, j).is_one()).collect();
                (key, j)
            })
            .collect();
        for (j, set) in out.iter_mut().enumerate() {
            let key: Vec<bool> = traced.iter().map(|&(_, p)| piece.s.get(p, j).is_one()).collect();
            if let Some(&cj) = lookup.get(&key) {
                set.extend(child_bases[cj].iter().copied());
            }
        }
    }
    out.into_iter()
        .map(|set| set.into_iter().filter(|&e| Some(e) != glue).collect())
        .collect()
}

fn row_role(
    tree: &Tree,
    idx: usize,
    row: usize,
    forms: &[HypersimplexForm],
    labels: &[Element],
    glued: &[bool],
    glue_of_node: &HashMap<usize, usize>,
) -> Option<RowRole> {
    let t = &tree.nodes[idx];
    match &t.node {
        Node::Leaf { rows, .. } => {
            let leaf = t.leaf?;
            let lr = rows.iter().position(|&r| r == row)?;
            let (e, side) = forms[leaf].rows[lr];
            let g = tree.offsets[leaf] + e;
            Some(if glued[g] {
                RowRole::Glue { label: labels[g] }
            } else {
                RowRole::Element {
                    label: labels[g],
                    side,
                }
            })
        }
        Node::TwoSum { special, .. } if *special == row => Some(RowRole::Glue {
            label: labels[glue_of_node[&idx]],
        }),
        _ => t.children.iter().find_map(|&c| {
            let cr = tree.piece(c).child_row(row)?;
            row_role(tree, c, cr, forms, labels, glued, glue_of_node)
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{expr_to_slack, hypersimplex_slack};
    use crate::shuffle::shuffle;

    fn round_trip(text: &str, seed: u64) -> RecognizedMatroid {
        let e: MatroidExpr = text.parse().unwrap();
        let (s, ..) = shuffle(&expr_to_slack(&e).unwrap(), seed);
        let found = recognize_2level_matroid_slack(&s)
            .unwrap()
            .unwrap_or_else(|| panic!("{text} not recognized"));
        assert!(is_isomorphic(&expr_to_slack(&found.expr).unwrap(), &s).is_some());
        found
    }

    #[test]
    fn single_leaf() {
        let found = round_trip("(u 5 2)", 1);
        assert!(matches!(found.expr, MatroidExpr::Leaf { d: 5, k: 2 | 3, .. }));
        let found = round_trip("(u 4 1)", 2);
        assert!(matches!(found.expr, MatroidExpr::Leaf { d: 4, .. }));
    }

    #[test]
    fn small_sums() {
        round_trip("(2sum (u 4 2) (u 3 1))", 3);
        round_trip("(2sum (u 3 1) (u 3 2))", 4);
        round_trip("(1sum (u 2 1) (u 2 1))", 5);
        round_trip("(1sum (u 4 2) (2sum (u 3 1) (u 4 2)))", 6);
        round_trip("(2sum (2sum (u 4 2) (u 5 2)) (u 4 3))", 7);
    }

    #[test]
    fn pentagon_is_rejected() {
        let s = Matrix::from_ints(&[
            [0, 0, 1, 1, 1],
            [1, 0, 0, 1, 1],
            [1, 1, 0, 0, 1],
            [1, 1, 1, 0, 0],
            [0, 1, 1, 1, 0],
        ])
        .unwrap();
        assert_eq!(recognize_2level_matroid_slack(&s).unwrap(), None);
    }

    #[test]
    fn preconditions() {
        let s = Matrix::from_ints(&[[0, 2], [1, 0]]).unwrap();
        assert!(matches!(recognize_2level_matroid_slack(&s), Err(Error::Precondition(_))));
        let s = Matrix::from_ints(&[[1, 1], [1, 0]]).unwrap();
        assert!(matches!(recognize_2level_matroid_slack(&s), Err(Error::Precondition(_))));
        let s = hypersimplex_slack(4, 2).unwrap().vstack(&hypersimplex_slack(4, 2).unwrap());
        assert!(matches!(
            recognize_2level_matroid_slack(&s.unwrap()),
            Err(Error::Precondition(_))
        ));
    }
}
