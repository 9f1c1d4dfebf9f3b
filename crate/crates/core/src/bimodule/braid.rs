use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::coxeter::{Gen, Word};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Monomial, Poly, Q};

use super::{BSElement, BSMorphism};

type Cache = Mutex<HashMap<(usize, Gen, Gen), Arc<BSMorphism>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The degree-0 braid-move morphism `f_{ab}` sending `1^(x)` to `1^(x)`:
/// - `|a - b| > 1`: `B_a B_b -> B_b B_a`;
/// - `b = a + 1`: `B_a B_b B_a -> B_b B_a B_b` with
///   `1 (x) x_a (x) 1 (x) 1 -> (x_a + x_{a+1}) 1^(x) - 1^(x) x_{a+2}`;
/// - `b = a - 1`: `B_a B_b B_a -> B_b B_a B_b` with
///   `1 (x) x_{a+1} (x) 1 (x) 1 -> 1^(x) (x_a + x_{a+1}) - x_{a-1} 1^(x)`.
///
/// Variables are 0-based and `s_a` swaps `x_a`, `x_{a+1}`. The images of all
/// basis elements are derived from these generator images and cached.
pub fn f_morphism(nvars: usize, a: Gen, b: Gen) -> Result<Arc<BSMorphism>> {
    if a == b || a + 1 >= nvars || b + 1 >= nvars {
        return Err(Error::LetterMismatch(format!(
            "no braid move between s{a} and s{b} with {nvars} variables"
        )));
    }
    let key = (nvars, a, b);
    if let Some(f) = cache().lock().unwrap().get(&key) {
        return Ok(f.clone());
    }
    let f = Arc::new(build(nvars, a, b)?);
    Ok(cache().lock().unwrap().entry(key).or_insert(f).clone())
}

/// Generators of the source as a bimodule, with their prescribed images.
pub(crate) fn generator_images(
    nvars: usize,
    a: Gen,
    b: Gen,
) -> (Word, Word, Vec<(BSElement, BSElement)>) {
    let (source, target) = if a.abs_diff(b) > 1 {
        (Word::new(vec![a, b]), Word::new(vec![b, a]))
    } else {
        (Word::new(vec![a, b, a]), Word::new(vec![b, a, b]))
    };
    let one_s = BSElement::one_tensor(&source, nvars);
    let one_t = BSElement::one_tensor(&target, nvars);
    let mut gens = vec![(one_s, one_t.clone())];
    if a.abs_diff(b) == 1 {
        let x = Poly::var;
        let (slot, image) = if b == a + 1 {
            (
                x(a),
                one_t
                    .left_mult(&(&x(a) + &x(a + 1)))
                    .sub(&one_t.right_mult(&x(a + 2)))
                    .unwrap(),
            )
        } else {
            (
                x(a + 1),
                one_t
                    .right_mult(&(&x(a) + &x(a + 1)))
                    .sub(&one_t.left_mult(&x(a - 1)))
                    .unwrap(),
            )
        };
        let g = BSElement::from_slots(
            &source,
            nvars,
            &[Poly::one(), slot, Poly::one(), Poly::one()],
        )
        .expect("three letters, four slots");
        gens.push((g, image));
    }
    (source, target, gens)
}

fn build(nvars: usize, a: Gen, b: Gen) -> Result<BSMorphism> {
    let (source, target, gens) = generator_images(nvars, a, b);
    let vars: Vec<usize> = source
        .iter()
        .flat_map(|s| [s, s + 1])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let images = (0..1u32 << source.len())
        .map(|mask| {
            let b = BSElement::basis(&source, nvars, mask);
            solve_image(&b, mask.count_ones(), &gens, &vars).ok_or_else(|| {
                Error::Internal(format!(
                    "basis element {mask:b} of B[{source}] is not in the span of the generators"
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    BSMorphism::from_images(&source, &target, nvars, 0, images)
}

/// Writes `target` (homogeneous of polynomial degree `degree`) as
/// `sum a * g_k * q` with monomials `a`, `q` in `vars`, and returns
/// `sum a * f(g_k) * q`.
fn solve_image(
    target: &BSElement,
    degree: u32,
    gens: &[(BSElement, BSElement)],
    vars: &[usize],
) -> Option<BSElement> {
    struct Column {
        left: Monomial,
        gen: usize,
        right: Monomial,
        value: BSElement,
    }
    let mut columns = Vec::new();
    for (k, (g, _)) in gens.iter().enumerate() {
        let gdeg = g
            .comps()
            .map(|(m, c)| c.degree().unwrap_or(0) + m.count_ones())
            .max()
            .unwrap_or(0);
        if gdeg > degree {
            continue;
        }
        let rest = degree - gdeg;
        for rdeg in 0..=rest {
            for right in Monomial::all_of_degree(vars, rdeg) {
                let gq = g.right_mult(&Poly::term(right, Q::from_integer(1)));
                for left in Monomial::all_of_degree(vars, rest - rdeg) {
                    let value = gq.left_mult(&Poly::term(left, Q::from_integer(1)));
                    columns.push(Column {
                        left,
                        gen: k,
                        right,
                        value,
                    });
                }
            }
        }
    }
    // rows are (mask, monomial) coordinates
    let mut rows: HashMap<(u32, Monomial), usize> = HashMap::new();
    let mut entries: Vec<Vec<(usize, Q)>> = Vec::with_capacity(columns.len());
    let intern = |mask: u32, m: Monomial, rows: &mut HashMap<(u32, Monomial), usize>| {
        let next = rows.len();
        *rows.entry((mask, m)).or_insert(next)
    };
    for col in &columns {
        let mut e = Vec::new();
        for (mask, c) in col.value.comps() {
            for &(m, q) in c.terms() {
                e.push((intern(mask, m, &mut rows), q));
            }
        }
        entries.push(e);
    }
    let mut rhs_entries = Vec::new();
    for (mask, c) in target.comps() {
        for &(m, q) in c.terms() {
            rhs_entries.push((intern(mask, m, &mut rows), q));
        }
    }
    let mut matrix = vec![vec![Q::zero(); columns.len()]; rows.len()];
    for (j, e) in entries.iter().enumerate() {
        for &(i, q) in e {
            matrix[i][j] += q;
        }
    }
    let mut rhs = vec![Q::zero(); rows.len()];
    for (i, q) in rhs_entries {
        rhs[i] += q;
    }
    let x = linalg::solve(&matrix, &rhs)?;

    let image_word = gens[0].1.word().clone();
    let mut out = BSElement::zero(&image_word, target.nvars());
    for (col, coef) in columns.iter().zip(x) {
        if coef.is_zero() {
            continue;
        }
        let img = gens[col.gen]
            .1
            .right_mult(&Poly::term(col.right, Q::from_integer(1)))
            .left_mult(&Poly::term(col.left, coef));
        out.add_assign(&img);
    }
    Some(out)
}
