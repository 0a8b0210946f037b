//! Seeded random inputs for randomized verification runs.

use rand::Rng;

use crate::closure::transformation_closure;
use crate::merge::MergeInput;
use crate::semigroup::Semigroup;

/// A random transformation semigroup with at most `max_size` elements.
/// Draws random maps on 2 or 3 points and retries until the closure fits.
pub fn random_semigroup<R: Rng>(rng: &mut R, max_size: usize) -> Semigroup {
    loop {
        let points = rng.gen_range(2..=3);
        let gens = rng.gen_range(1..=2);
        let maps: Vec<Vec<usize>> = (0..gens)
            .map(|_| (0..points).map(|_| rng.gen_range(0..points)).collect())
            .collect();
        if let Ok(gen) = transformation_closure(&maps, max_size) {
            if gen.sg.size() <= max_size {
                return gen.sg;
            }
        }
    }
}

/// A random merge input with component semigroups of size at most 3 and one
/// or two letters per subalphabet. Any generator maps are valid, since the
/// homomorphisms are from free semigroups.
pub fn random_merge_input<R: Rng>(rng: &mut R, max_component: usize) -> MergeInput {
    let t1 = random_semigroup(rng, max_component);
    let t2 = random_semigroup(rng, max_component);
    let t0 = random_semigroup(rng, max_component);
    let a1 = rng.gen_range(1..=2);
    let a2 = rng.gen_range(1..=2);
    let psi1: Vec<u32> = (0..a1).map(|_| rng.gen_range(0..t1.size()) as u32).collect();
    let psi2: Vec<u32> = (0..a2).map(|_| rng.gen_range(0..t2.size()) as u32).collect();
    let chi: Vec<u32> = (0..t1.size() * t2.size())
        .map(|_| rng.gen_range(0..t0.size()) as u32)
        .collect();
    let letter_names: Vec<String> = (0..a1)
        .map(|i| format!("a{i}"))
        .chain((0..a2).map(|i| format!("b{i}")))
        .collect();
    MergeInput::new(t1, t2, t0, psi1, psi2, chi, letter_names).expect("shapes are consistent")
}

/// Seed shared by the merge-check command and the acceptance suite.
pub const MERGE_CHECK_SEED: u64 = 0x5347_4b49;

/// A reproducible batch of merge inputs.
pub fn seeded_merge_inputs(seed: u64, n: usize, max_component: usize) -> Vec<MergeInput> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_merge_input(&mut rng, max_component)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_semigroups_are_small_and_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_semigroup(&mut rng, 3);
        assert!(a.size() <= 3);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let b = random_semigroup(&mut rng, 3);
        assert_eq!(a.table(), b.table());
    }

    #[test]
    fn random_merge_inputs_are_well_formed() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let input = random_merge_input(&mut rng, 3);
            assert!(input.t1.size() <= 3 && input.t2.size() <= 3 && input.t0.size() <= 3);
            assert!(input.a1 >= 1 && input.a2 >= 1);
        }
    }
}
