"""Regenerate the embedded McKay-Thompson coefficient tables.

Deliberately independent of the ``moonring`` package: products are expanded
factor by factor on plain integer lists, so the CSV files can be used to
cross-check the package's own eta-quotient code.

    python scripts/generate_series_tables.py [outdir]
"""
import sys
from pathlib import Path

TOP = 200  # last exponent written
N = TOP + 8  # working length


def eta_product(exps):
    """prod_d prod_{n>=1} (1 - q^{dn})^{r_d} as an integer list of length N."""
    a = [0] * N
    a[0] = 1
    for d, r in exps.items():
        for n in range(1, N):
            k = d * n
            if k >= N:
                break
            for _ in range(abs(r)):
                if r > 0:
                    for i in range(N - 1, k - 1, -1):
                        a[i] -= a[i - k]
                else:
                    for i in range(k, N):
                        a[i] += a[i - k]
    return a


def eta_quotient(exps):
    weight = sum(d * r for d, r in exps.items())
    assert weight % 24 == 0
    shift = weight // 24
    return {shift + i: c for i, c in enumerate(eta_product(exps))}


def fricke_sum(exps, scale, const):
    """A + scale/A + const, A the eta quotient."""
    out = dict(eta_quotient(exps))
    for k, c in eta_quotient({d: -r for d, r in exps.items()}).items():
        out[k] = out.get(k, 0) + scale * c
    out[0] = out.get(0, 0) + const
    return out


def j_minus_744():
    sigma3 = [0] * N
    for d in range(1, N):
        for m in range(d, N, d):
            sigma3[m] += d ** 3
    e4 = [1] + [240 * sigma3[n] for n in range(1, N)]
    cube = [0] * N
    sq = [sum(e4[i] * e4[n - i] for i in range(n + 1)) for n in range(N)]
    cube = [sum(sq[i] * e4[n - i] for i in range(n + 1)) for n in range(N)]
    # Delta = q * prod (1-q^n)^24, so j = q^{-1} * cube / prod
    prod = eta_product({1: 24})
    quo = [0] * N
    for n in range(N):
        quo[n] = cube[n] - sum(prod[i] * quo[n - i] for i in range(1, n + 1))
    out = {n - 1: c for n, c in enumerate(quo)}
    out[0] -= 744
    return out


def tables():
    return {
        "1A": j_minus_744(),
        "2A": fricke_sum({1: 24, 2: -24}, 4096, 24),
        "2B": fricke_sum({1: 24, 2: -24}, 0, 24),
        "3A": fricke_sum({1: 12, 3: -12}, 729, 12),
        "4A": fricke_sum({2: 48, 1: -24, 4: -24}, 0, -24),
        "4B": fricke_sum({2: 12, 4: -12}, 64, 0),
        "6A": fricke_sum({1: 6, 3: 6, 2: -6, 6: -6}, 64, 6),
    }


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parent.parent / "src" / "moonring" / "data" / "series")
    outdir.mkdir(parents=True, exist_ok=True)
    # second route to 6A via the level-6 quotient with exponent 4
    alt = fricke_sum({1: 4, 2: 4, 3: -4, 6: -4}, 81, 4)
    six = tables()["6A"]
    assert all(alt.get(n, 0) == six.get(n, 0) for n in range(-1, TOP + 1))
    for label, series in tables().items():
        lines = ["n,coefficient"]
        lines += [f"{n},{series.get(n, 0)}" for n in range(-1, TOP + 1)]
        (outdir / f"{label}.csv").write_text("\n".join(lines) + "\n")
        print(label, [series.get(n, 0) for n in range(-1, 4)])


if __name__ == "__main__":
    main()
