//! Brute-force reference implementations shared by the integration tests.
//!
//! Nothing here calls into the library's checkers or enumerator; tables are
//! plain `Vec<Vec<usize>>` and every law is spelled out by hand.

#![allow(dead_code)]

use magma_lab::dsl::{Equation, Term};
use magma_lab::law::Law;
use magma_lab::magma::Magma;
use rand::Rng;

pub type Table = Vec<Vec<usize>>;

pub fn rows(m: &Magma) -> Table {
    let n = m.order();
    (0..n)
        .map(|a| (0..n).map(|b| m.op(a, b)).collect())
        .collect()
}

pub fn magma(t: &Table) -> Magma {
    let rows: Vec<Vec<i64>> = t
        .iter()
        .map(|r| r.iter().map(|&v| v as i64).collect())
        .collect();
    Magma::from_rows(t.len(), &rows).unwrap()
}

pub fn random_table(rng: &mut impl Rng, n: usize) -> Table {
    (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(0..n)).collect())
        .collect()
}

pub fn eval(t: &Table, term: &Term, env: &[usize; 26]) -> usize {
    match term {
        Term::Var(v) => env[*v as usize],
        Term::Op(l, r) => t[eval(t, l, env)][eval(t, r, env)],
    }
}

/// First failing assignment in lexicographic order (last variable fastest),
/// variables in order of first occurrence.
pub fn equation_failure(t: &Table, eq: &Equation) -> Option<Vec<usize>> {
    let vars = eq.variables();
    let n = t.len();
    let k = vars.len();
    let total = n.pow(k as u32);
    for idx in 0..total {
        let mut vals = vec![0; k];
        let mut x = idx;
        for slot in vals.iter_mut().rev() {
            *slot = x % n;
            x /= n;
        }
        let mut env = [0usize; 26];
        for (v, &val) in vars.iter().zip(&vals) {
            env[*v as usize] = val;
        }
        if eval(t, &eq.lhs, &env) != eval(t, &eq.rhs, &env) {
            return Some(vals);
        }
    }
    None
}

fn triples(t: &Table, f: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    let n = t.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !f(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

/// First failing (a, b, c) for one of the seven identities, written out by hand.
pub fn identity_failure(t: &Table, law: &Law) -> Option<Vec<usize>> {
    let o = |x: usize, y: usize| t[x][y];
    match law {
        Law::Associative => triples(t, |a, b, c| o(a, o(b, c)) == o(o(a, b), c)),
        Law::Commutative => {
            let n = t.len();
            (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .find(|&(a, b)| t[a][b] != t[b][a])
                .map(|(a, b)| vec![a, b])
        }
        Law::CyclicI => triples(t, |a, b, c| o(a, o(b, c)) == o(c, o(a, b))),
        Law::CyclicII => triples(t, |a, b, c| o(a, o(b, c)) == o(o(c, a), b)),
        Law::AbelGrassmannI => triples(t, |a, b, c| o(a, o(b, c)) == o(c, o(b, a))),
        Law::AbelGrassmannII => triples(t, |a, b, c| o(a, o(b, c)) == o(o(b, a), c)),
        Law::Reduced => triples(t, |a, b, c| o(o(a, b), c) == o(a, o(c, b))),
        other => panic!("{other:?} is not one of the seven identities"),
    }
}

pub fn is_latin(t: &Table) -> bool {
    let n = t.len();
    (0..n).all(|a| {
        let mut row = t[a].clone();
        row.sort_unstable();
        let mut col: Vec<usize> = (0..n).map(|b| t[b][a]).collect();
        col.sort_unstable();
        row == (0..n).collect::<Vec<_>>() && col == (0..n).collect::<Vec<_>>()
    })
}

/// Unique solvability of `x + a = b` and `a + y = b`, straight from the definition.
pub fn unique_solutions(t: &Table) -> bool {
    let n = t.len();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let xs = (0..n).filter(|&x| t[x][a] == b).count();
            let ys = (0..n).filter(|&y| t[a][y] == b).count();
            xs == 1 && ys == 1
        })
    })
}

pub fn cancellative(t: &Table) -> bool {
    let n = t.len();
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| (t[a][b] != t[a][c] || b == c) && (t[b][a] != t[c][a] || b == c))
        })
    })
}

pub fn left_neutrals(t: &Table) -> Vec<usize> {
    let n = t.len();
    (0..n).filter(|&e| (0..n).all(|x| t[e][x] == x)).collect()
}

pub fn right_neutrals(t: &Table) -> Vec<usize> {
    let n = t.len();
    (0..n).filter(|&e| (0..n).all(|x| t[x][e] == x)).collect()
}

pub fn neutral(t: &Table) -> Option<usize> {
    let l = left_neutrals(t);
    right_neutrals(t).into_iter().find(|e| l.contains(e))
}

pub fn inverses(t: &Table) -> bool {
    let n = t.len();
    match neutral(t) {
        Some(e) => (0..n).all(|a| (0..n).any(|b| t[a][b] == e && t[b][a] == e)),
        None => false,
    }
}

pub fn law_holds(t: &Table, law: &Law) -> bool {
    match law {
        Law::Neutral => neutral(t).is_some(),
        Law::Inverses => inverses(t),
        Law::Quasigroup => unique_solutions(t),
        Law::Cancellative => cancellative(t),
        Law::Loop => unique_solutions(t) && neutral(t).is_some(),
        Law::Group => law_holds(t, &Law::Associative) && inverses(t),
        Law::Abelian => law_holds(t, &Law::Group) && law_holds(t, &Law::Commutative),
        Law::User(eq) => equation_failure(t, eq).is_none(),
        identity => identity_failure(t, identity).is_none(),
    }
}

/// Every table of order `n`, in lexicographic order of the flattened table.
pub fn all_tables(n: usize) -> Vec<Table> {
    let cells = n * n;
    let total = n.pow(cells as u32);
    (0..total)
        .map(|idx| {
            let mut flat = vec![0; cells];
            let mut x = idx;
            for slot in flat.iter_mut().rev() {
                *slot = x % n;
                x /= n;
            }
            flat.chunks(n).map(<[usize]>::to_vec).collect()
        })
        .collect()
}

/// Every table whose rows are permutations, filtered on the columns.
pub fn latin_tables(n: usize) -> Vec<Table> {
    let perms = {
        let mut p = permutations(n);
        p.sort();
        p
    };
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let t: Table = idx.iter().map(|&i| perms[i].clone()).collect();
        if is_latin(&t) {
            out.push(t);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < perms.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn relabel(t: &Table, p: &[usize]) -> Table {
    let n = t.len();
    let mut out = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            out[p[a]][p[b]] = p[t[a][b]];
        }
    }
    out
}

pub fn isomorphic(s: &Table, t: &Table) -> bool {
    s.len() == t.len() && permutations(s.len()).iter().any(|p| relabel(s, p) == *t)
}

/// Latin squares whose first row and column are `0..n` in order.
pub fn reduced_latin_count(n: usize) -> usize {
    fn go(t: &mut Table, cell: usize, n: usize) -> usize {
        if cell == n * n {
            return 1;
        }
        let (r, c) = (cell / n, cell % n);
        if r == 0 || c == 0 {
            return go(t, cell + 1, n);
        }
        let mut total = 0;
        for v in 0..n {
            if (0..c).any(|j| t[r][j] == v) || (0..r).any(|i| t[i][c] == v) {
                continue;
            }
            t[r][c] = v;
            total += go(t, cell + 1, n);
        }
        t[r][c] = usize::MAX;
        total
    }
    let mut t = vec![vec![usize::MAX; n]; n];
    t[0] = (0..n).collect();
    for (i, row) in t.iter_mut().enumerate() {
        row[0] = i;
    }
    go(&mut t, 0, n)
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
