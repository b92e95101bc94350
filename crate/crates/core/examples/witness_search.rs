//! Random subgroups of the Sylow 2-subgroup of S16, looking for class 4
//! with derived subgroup C4xC2 and third term C2xC2.

use modlie::classify::{classify, Evidence};
use modlie::group::{FiniteGroup, Permutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let degree = 16;
    // (0 1), (0 2)(1 3), ... generate the iterated wreath product
    let sylow: Vec<Permutation> = (0..4)
        .map(|level| {
            let s = 1usize << level;
            let mut images: Vec<usize> = (0..degree).collect();
            for i in 0..s {
                images.swap(i, i + s);
            }
            Permutation::from_images(images)
        })
        .collect::<Result<_, _>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..10_000 {
        let picks: Vec<Permutation> = (0..rng.gen_range(2..=3))
            .map(|_| {
                (0..30).fold(Permutation::identity(degree), |acc, _| {
                    acc.then(&sylow[rng.gen_range(0..sylow.len())])
                })
            })
            .collect();
        let Ok(g) = FiniteGroup::from_permutation_generators(degree, &picks, 256) else {
            continue;
        };
        let e = Evidence::of(&g);
        let hit = e.class == 4
            && e.gamma2.as_ref().is_some_and(|t| t.factors() == [4, 2])
            && e.gamma3.as_ref().is_some_and(|t| t.factors() == [2, 2]);
        if hit {
            let v = classify(&g, 2, None);
            println!(
                "trial {trial}: order {}, {} with t^L = {:?}",
                g.order(),
                v.status.tag(),
                v.t_upper
            );
            for p in &picks {
                println!("  {:?}", p.images());
            }
            return Ok(());
        }
    }
    println!("nothing found");
    Ok(())
}
