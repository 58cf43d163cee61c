//! Displayed lift products at zero radical against a dense integer model of
//! M_{n|n} written independently of the library's matrix code.

use jpn_core::matrix::build_jpn;
use jpn_core::{Element, GradedAlgebra, Rational};

#[derive(Clone, PartialEq, Debug)]
struct Dense {
    n: usize,
    m: Vec<i64>,
}

impl Dense {
    fn zero(n: usize) -> Self {
        Dense { n, m: vec![0; 4 * n * n] }
    }

    fn at(&mut self, r: usize, c: usize) -> &mut i64 {
        let w = 2 * self.n;
        &mut self.m[r * w + c]
    }

    fn get(&self, r: usize, c: usize) -> i64 {
        self.m[r * 2 * self.n + c]
    }

    fn odd(&self) -> bool {
        let n = self.n;
        let mut parity = None;
        for r in 0..2 * n {
            for c in 0..2 * n {
                if self.get(r, c) != 0 {
                    let p = (r < n) != (c < n);
                    assert!(parity.is_none_or(|q| q == p), "mixed matrix");
                    parity = Some(p);
                }
            }
        }
        parity.unwrap_or(false)
    }

    fn mul(&self, o: &Dense) -> Dense {
        let w = 2 * self.n;
        let mut out = Dense::zero(self.n);
        for r in 0..w {
            for k in 0..w {
                let a = self.get(r, k);
                if a != 0 {
                    for c in 0..w {
                        *out.at(r, c) += a * o.get(k, c);
                    }
                }
            }
        }
        out
    }

    fn lin(&self, a: i64, o: &Dense, b: i64) -> Dense {
        Dense {
            n: self.n,
            m: self.m.iter().zip(&o.m).map(|(x, y)| a * x + b * y).collect(),
        }
    }

    /// `2(x∘y) = xy + (−1)^{|x||y|} yx`.
    fn twice_jordan(&self, o: &Dense) -> Dense {
        let s = if self.odd() && o.odd() { -1 } else { 1 };
        self.mul(o).lin(1, &o.mul(self), s)
    }
}

struct Model {
    n: usize,
}

impl Model {
    fn unit(&self, r: usize, c: usize) -> Dense {
        let mut d = Dense::zero(self.n);
        *d.at(r, c) = 1;
        d
    }

    /// 1-based block indices: `top(i)` is row/column `i` of the even block,
    /// `bot(i)` of the odd one.
    fn top(&self, i: usize) -> usize {
        i - 1
    }

    fn bot(&self, i: usize) -> usize {
        self.n + i - 1
    }

    fn u(&self, i: usize, j: usize) -> Dense {
        self.unit(self.top(i), self.top(j)).lin(1, &self.unit(self.bot(j), self.bot(i)), 1)
    }

    fn h(&self, i: usize, j: usize) -> Dense {
        if i == j {
            return self.unit(self.bot(i), self.top(i));
        }
        self.unit(self.bot(i), self.top(j)).lin(1, &self.unit(self.bot(j), self.top(i)), 1)
    }

    fn s(&self, i: usize, j: usize) -> Dense {
        self.unit(self.top(i), self.bot(j)).lin(1, &self.unit(self.top(j), self.bot(i)), -1)
    }

    fn named(&self, name: &str) -> Dense {
        let (fam, rest) = name.split_at(1);
        let ix: Vec<usize> = rest[1..].chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
        let (i, j) = (ix[0], *ix.get(1).unwrap_or(&ix[0]));
        match fam {
            "u" => self.u(i, j),
            "h" => self.h(i, j),
            "s" => self.s(i, j),
            _ => unreachable!(),
        }
    }
}

/// Left factor, right factor, `2·product` as `(coef, label)` terms.
type Row = (String, String, Vec<(i64, String)>);

fn label(f: char, ix: &[usize]) -> String {
    let mut s = format!("{f}_");
    for i in ix {
        s.push_str(&i.to_string());
    }
    s
}

fn table(n: usize) -> Vec<Row> {
    let mut rows = Vec::new();
    let mut add = |x: String, y: String, p: Vec<(i64, String)>| rows.push((x, y, p));
    for i in 1..=n {
        add(label('u', &[i]), label('h', &[i]), vec![(2, label('h', &[i]))]);
        for j in (1..=n).filter(|&j| j != i) {
            add(label('u', &[i]), label('h', &[i, j]), vec![(1, label('h', &[i, j]))]);
            add(label('u', &[i]), label('s', &[i, j]), vec![(1, label('s', &[i, j]))]);
            add(label('u', &[i, j]), label('h', &[i, j]), vec![(2, label('h', &[j]))]);
            add(label('u', &[j, i]), label('h', &[i, j]), vec![(2, label('h', &[i]))]);
            add(label('u', &[i, j]), label('h', &[i]), vec![(1, label('h', &[i, j]))]);
            add(label('h', &[i]), label('s', &[i, j]), vec![(1, label('u', &[j, i]))]);
            add(
                label('h', &[i, j]),
                label('s', &[i, j]),
                vec![(1, label('u', &[j])), (-1, label('u', &[i]))],
            );
            for l in (1..=n).filter(|&l| l != i && l != j) {
                add(label('u', &[i, j]), label('h', &[i, l]), vec![(1, label('h', &[j, l]))]);
                add(label('u', &[i, j]), label('s', &[j, l]), vec![(1, label('s', &[i, l]))]);
                add(label('h', &[i, j]), label('s', &[j, l]), vec![(1, label('u', &[l, i]))]);
            }
        }
    }
    rows
}

fn element(alg: &GradedAlgebra, name: &str) -> Element {
    alg.basis()
        .element(&name.parse().unwrap())
        .unwrap_or_else(|| panic!("{name} not in basis"))
}

/// Checks every displayed product for `n` against both the dense model and
/// the structure constants; returns the number of products checked.
pub fn check(n: usize) -> Result<usize, String> {
    let (alg, _) = build_jpn(n).unwrap();
    let model = Model { n };
    let rows = table(n);
    for (x, y, p) in &rows {
        let expected = p
            .iter()
            .fold(Dense::zero(n), |acc, (c, l)| acc.lin(1, &model.named(l), *c));
        let got = model.named(x).twice_jordan(&model.named(y));
        if got != expected {
            return Err(format!("matrix model disagrees on {x}*{y}"));
        }

        let want = p.iter().fold(Element::zero(), |acc: Element, (c, l)| {
            acc.add(&element(&alg, l).scale(&Rational::new(*c, 2)))
        });
        let have = alg.multiply(&element(&alg, x), &element(&alg, y)).unwrap();
        if have != want {
            return Err(format!("structure constants disagree on {x}*{y}: {}", have.display(alg.basis())));
        }
        let swapped = alg.multiply(&element(&alg, y), &element(&alg, x)).unwrap();
        let odd = x.starts_with('s') && y.starts_with('h') || x.starts_with('h') && y.starts_with('s');
        if swapped != if odd { want.neg() } else { want } {
            return Err(format!("{y}*{x} breaks supercommutativity"));
        }
    }
    Ok(rows.len())
}
