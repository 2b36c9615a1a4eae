use std::collections::VecDeque;

use super::params::{Family, MapParameters};
use crate::fpgroups::{enumerate_cosets, regular_representation, Presentation, Word};
use crate::permgroup::Permutation;

const A: usize = 0;
const B: usize = 1;

fn ab_presentation(relators: Vec<Word>) -> Presentation {
    Presentation::new(vec!["a".into(), "b".into()], relators)
}

/// `u = v` as the relator `u v^-1`.
fn eq(u: &Word, v: &Word) -> Word {
    u.mul(&v.inv())
}

/// The family group as a presentation over exactly `a` and `b`.
pub fn presentation_for(params: &MapParameters) -> Presentation {
    match params.family {
        Family::M1 => g1(params),
        Family::M2 => g2_flat(params),
        Family::M3 => g3(params),
        Family::M4 => g4(params),
    }
}

fn g1(params: &MapParameters) -> Presentation {
    let p = params.p as i64;
    let big_n = params.n as i64 * (p - 1);
    let r = params.r.expect("validated M1 parameters carry r") as i64;
    let a = Word::gen(A);
    let c = Word::gen_pow(A, big_n / 2).mul(&Word::gen(B));
    ab_presentation(vec![
        Word::gen_pow(A, big_n),
        Word::gen_pow(B, 2),
        c.pow(p * params.n as i64),
        eq(&c.conj(&a), &c.pow(r)),
    ])
}

fn g3(params: &MapParameters) -> Presentation {
    let n = params.n as i64;
    let three_e = 3i64.pow(params.e);
    let u = params.u.expect("validated M3 parameters carry u") as i64;
    let a = Word::gen(A);
    let b = Word::gen(B);
    let c = Word::gen_pow(A, three_e).mul(&b);
    let x1 = Word::gen_pow(A, 2 * three_e);
    let y1 = x1.conj(&b);
    let rhs = c
        .pow(2)
        .mul(&x1.pow(u))
        .mul(&y1.pow((1 - three_e) / 2 * u));
    ab_presentation(vec![
        Word::gen_pow(A, 2 * n),
        Word::gen_pow(B, 2),
        Word::commutator(&x1, &y1),
        c.pow(3 * three_e),
        eq(&y1.conj(&a), &x1.inv().mul(&y1.inv())),
        eq(&c.conj(&a), &rhs),
    ])
}

fn g4(params: &MapParameters) -> Presentation {
    let n = params.n as i64;
    let third = if params.e == 0 { 0 } else { n / 3 };
    let a = Word::gen(A);
    let b = Word::gen(B);
    let x = Word::gen_pow(A, 2);
    let y = x.conj(&b);
    let twist = |s: i64| x.pow(s * third).mul(&y.pow(-s * third));
    ab_presentation(vec![
        Word::gen_pow(A, 2 * n),
        Word::gen_pow(B, 2),
        eq(&Word::commutator(&x, &y), &twist(params.i)),
        eq(&y.conj(&a), &x.inv().mul(&y.inv())),
        eq(&a.mul(&b).pow(3), &twist(params.l)),
    ])
}

/// `G2(p)` over its own generators `w, z, c, g`.
pub fn g2_native(p: u64) -> Presentation {
    let t = crate::numtheory::smallest_primitive_root(p, 1) as i64;
    let p = p as i64;
    let (w, z, c, g) = (Word::gen(0), Word::gen(1), Word::gen(2), Word::gen(3));
    Presentation::new(
        ["w", "z", "c", "g"].map(String::from).to_vec(),
        vec![
            w.pow(p),
            z.pow(p),
            c.pow(p),
            g.pow(p - 1),
            Word::commutator(&w, &z),
            eq(&c.conj(&g), &c.pow(t)),
            eq(&w.conj(&c), &w.mul(&z)),
            Word::commutator(&z, &c),
            Word::commutator(&w, &g),
            eq(&z.conj(&g), &z.pow(t)),
        ],
    )
}

/// Rewrites `G2(p)` over `a = w g^j`, `b = c g^((p-1)/2)`.
///
/// The native group is enumerated once, words for `w, z, c, g` over `a, b`
/// are read off a breadth-first search of its regular representation, and
/// the Tietze transformation adds `a = W Gw^j` and `b = C Gw^((p-1)/2)` to
/// the native relators evaluated at those words.
fn g2_flat(params: &MapParameters) -> Presentation {
    let p = params.p;
    let native = g2_native(p);
    let order = (p * p * p * (p - 1)) as usize;
    let table = enumerate_cosets(&native, &[], 4 * order)
        .expect("native presentation is well formed");
    let group = regular_representation(&table).expect("G2(p) is finite");
    let gen = |name: &str| group.generator(name).expect("declared").clone();
    let (w, z, c, g) = (gen("w"), gen("z"), gen("c"), gen("g"));
    let half = ((p - 1) / 2) as i64;
    let a = w.then(&g.pow(params.j));
    let b = c.then(&g.pow(half));
    assert!(b.then(&b).is_identity(), "c g^((p-1)/2) is an involution");

    let words = bfs_words(&[a, b], group.degree());
    let word_of = |perm: &Permutation| words[perm.image(0)].clone().expect("<a,b> = G2(p)");
    let images = [word_of(&w), word_of(&z), word_of(&c), word_of(&g)];
    let substitute = |r: &Word| -> Word {
        r.letters().iter().fold(Word::identity(), |acc, l| {
            let piece = &images[l.generator];
            acc.mul(&if l.inverse { piece.inv() } else { piece.clone() })
        })
    };
    let mut relators: Vec<Word> = native.relators().iter().map(substitute).collect();
    relators.push(eq(&Word::gen(A), &images[0].mul(&images[3].pow(params.j))));
    relators.push(eq(&Word::gen(B), &images[2].mul(&images[3].pow(half))));
    ab_presentation(relators)
}

/// Shortest words over the generators for each point of a regular action,
/// indexed by the image of point 0.
fn bfs_words(gens: &[Permutation], degree: usize) -> Vec<Option<Word>> {
    let mut words: Vec<Option<Word>> = vec![None; degree];
    words[0] = Some(Word::identity());
    let mut queue = VecDeque::from([0usize]);
    while let Some(pt) = queue.pop_front() {
        let current = words[pt].clone().expect("queued points have words");
        for (gi, g) in gens.iter().enumerate() {
            for (inverse, image) in [(false, g.image(pt)), (true, g.inverse().image(pt))] {
                if words[image].is_none() {
                    let letter = if inverse {
                        Word::gen_pow(gi, -1)
                    } else {
                        Word::gen(gi)
                    };
                    words[image] = Some(current.mul(&letter));
                    queue.push_back(image);
                }
            }
        }
    }
    words
}
