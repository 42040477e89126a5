//! Exact-arithmetic reference for the random walk, used to check
//! [`crate::prox::walk`].
//!
//! Builds the transition matrix of the start vertex's component explicitly
//! and multiplies the start indicator by it `steps` times over big rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::LexicalGraph;
use crate::lexeme::Lexeme;

/// Largest component the exact walk accepts.
pub const EXACT_WALK_BUDGET: usize = 1000;

/// Walk distribution dense over the whole graph, in exact arithmetic.
pub fn walk_exact(graph: &LexicalGraph, start: &Lexeme, steps: usize) -> Result<Vec<BigRational>> {
    let r = graph.require(start)?;
    let members = graph.component_of(r);
    let k = members.len();
    if k > EXACT_WALK_BUDGET {
        return Err(Error::OracleBudget {
            vertices: k,
            budget: EXACT_WALK_BUDGET,
        });
    }

    // m[i][j] = a_ij / d(i) over the component
    let transition: Vec<Vec<BigRational>> = members
        .iter()
        .map(|&u| {
            let row_sum = members.iter().filter(|&&w| graph.has_edge(u, w)).count();
            let d = BigInt::from(row_sum);
            members
                .iter()
                .map(|&w| {
                    if graph.has_edge(u, w) {
                        BigRational::new(BigInt::one(), d.clone())
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();

    let local_start = members
        .binary_search(&r)
        .expect("start is in its component");
    let mut row: Vec<BigRational> = (0..k)
        .map(|i| {
            if i == local_start {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    for _ in 0..steps {
        row = (0..k)
            .map(|j| {
                let mut acc = BigRational::zero();
                for (i, p) in row.iter().enumerate() {
                    if !p.is_zero() && !transition[i][j].is_zero() {
                        acc += p * &transition[i][j];
                    }
                }
                acc
            })
            .collect();
    }

    let mut dense = vec![BigRational::zero(); graph.vertex_count()];
    for (i, p) in members.into_iter().zip(row) {
        dense[i] = p;
    }
    Ok(dense)
}
