"""Does imposing D e_i in [g, e_i] on basis vectors alone already cut out AID?

For each algebra the upper bound from basis vectors only is compared with the
certified AID.  A strict gap is an example where basis vectors do not suffice.

    python3 scripts/basis_vector_experiment.py
"""

from aidlab.derivations import AidConfig, compute_der, compute_inn, derivation_report, sample_upper_bound
from aidlab.goldens import catalogue, graph_catalogue

BASIS_ONLY = AidConfig(structured_samples=False, max_batches=0)


def main():
    gaps = []
    algebras = catalogue() + graph_catalogue(4)
    for L in algebras:
        der, inn = compute_der(L), compute_inn(L)
        basis = [L.basis_vector(i) for i in range(1, L.dim + 1)]
        upper, _ = sample_upper_bound(L, der, inn, BASIS_ONLY, extra=basis)
        aid = derivation_report(L).aid.space
        if upper.dim != aid.dim:
            gaps.append((L.name, L.dim, upper.dim, aid.dim))
    print(f"{len(algebras)} algebras checked; basis vectors alone overshoot on {len(gaps)}")
    for name, dim, up, aid in gaps:
        print(f"  {name} (dim {dim}): basis-vector bound {up}, AID {aid}")


if __name__ == "__main__":
    main()
