"""
Walk through the real projective plane example.
This script shows:
1. The Lyubeznik table of the 6-vertex triangulation over QQ and over GF(2)
2. The nu-table of the (self-dual) ideal over GF(2)
3. Two compositions with ideals in fresh variables, predicted and computed
"""

from lyutab.analysis.lyubeznik import check_lambda_consecutiveness, lyubeznik_table
from lyutab.analysis.resolution import resolution_betti
from lyutab.analysis.strands import nu_table
from lyutab.combinatorics import corpus
from lyutab.combinatorics.monomial import squarefree
from lyutab.insights.compose import verify_composition
from lyutab.linalg.fields import FieldSpec
from lyutab.utils.render import render


def demonstrate_rp2():
    print("Real projective plane: characteristic dependence")
    print("=" * 50)
    ideal = corpus.rp2_ideal()
    print(f"I = {ideal}")

    for k in (FieldSpec.rationals(), FieldSpec.prime(2)):
        print(f"\nBetti table of I over {k}:")
        print(render(resolution_betti(ideal, k)))
        table = lyubeznik_table(ideal, k)
        print(f"\nLyubeznik table of R/I over {k}:")
        print(render(table))
        report = check_lambda_consecutiveness(table)
        print(f"consecutiveness: {'ok' if report.passed else report.violations}, rho = {report.details['rho']}")

    print("\nnu-table of I over GF(2):")
    print(render(nu_table(ideal, FieldSpec.prime(2))))

    print("\nCompositions with ideals in fresh variables")
    print("-" * 30)
    x7 = squarefree(1, [[1]])
    two_primes = corpus.prime_intersection(4, [[1, 2], [3, 4]])
    for name, other in (("I ∩ (x7)", x7), ("I ∩ (x7,x8) ∩ (x9,x10)", two_primes)):
        for k in (FieldSpec.rationals(), FieldSpec.prime(2)):
            report = verify_composition(ideal, other, k, "intersection-lambda")
            print(f"{name} over {k}: {report.status} ({report.clause} clause)")


if __name__ == "__main__":
    demonstrate_rp2()
