"""Independent sympy computation of the restriction correlators and
related identities. Prints the values frozen into tests/unit/test_ward.cpp.

Run: python3 tests/oracles/ward_oracle.py
"""
import itertools

import sympy as sp


def ward_extend(bn, xs, xnew, alpha):
    r = alpha / xnew**2 * bn
    for xj in xs:
        r -= (1 / (xj - xnew) + 1 / xnew) * sp.diff(bn, xj) - 2 / (xj - xnew) ** 2 * bn
    return sp.cancel(sp.together(r))


def build(alpha, nmax):
    """Returns [B_0, ..., B_nmax] with B_n a function of symbols y1..yn."""
    ys = sp.symbols(f"y1:{nmax + 1}")
    out = [sp.Integer(1)]
    for n in range(nmax):
        # B_n in variables ys[1..n], new variable ys[0]; then shift names.
        shifted = out[n].subs({ys[i]: ys[i + 1] for i in reversed(range(n))}, simultaneous=True)
        out.append(ward_extend(shifted, list(ys[1 : n + 1]), ys[0], alpha))
    return ys, out


def script_l(N, f, xs):
    return sum(-xj ** (1 + N) * sp.diff(f, xj) - 2 * (N + 1) * xj**N * f for xj in xs)


def bubble_t(p, xs):
    if p == 0:
        return sp.Integer(0)
    total = 0
    for s in itertools.permutations(xs):
        den = s[0] ** 2 * s[-1] ** 2
        for j in range(1, p):
            den *= (s[j] - s[j - 1]) ** 2
        total += 1 / den
    return sp.cancel(total)


def u_apply(comps, xs):
    n = len(xs)
    total = 0
    for p in range(1, n + 1):
        for J in itertools.combinations(range(n), p):
            rest = [xs[i] for i in range(n) if i not in J]
            f = comps[n - p]
            f = f.subs({sp.Symbol(f"y{i+1}"): rest[i] for i in range(len(rest))}, simultaneous=True)
            total += bubble_t(p, [xs[i] for i in J]) * f
    return sp.cancel(total)


def perm_oracle(points):
    total = sp.Integer(0)
    for s in itertools.permutations(points):
        prev = 0
        term = sp.Integer(1)
        for v in s:
            term /= (v - prev) ** 2
            prev = v
        total += term
    return total


def main():
    R = sp.Rational
    ys, b58 = build(R(5, 8), 3)
    y1, y2, y3 = ys[:3]
    print("B2(5/8) =", sp.factor(b58[2]))
    print("B2(5/8)(1,2) =", b58[2].subs({y1: 1, y2: 2}))
    print("B3(5/8)(1,2,3) =", b58[3].subs({y1: 1, y2: 2, y3: 3}))
    print("B3(5/8)(-1,1/2,3/7) =", b58[3].subs({y1: -1, y2: R(1, 2), y3: R(3, 7)}))

    ys1, b1 = build(1, 4)
    print("B2(1)(1,2) =", b1[2].subs({ys1[0]: 1, ys1[1]: 2}))
    pt = [R(1), R(-2), R(3, 5), R(7, 2)]
    print("B4(1)(1,-2,3/5,7/2) =", b1[4].subs(dict(zip(ys1, pt))), "perm:", perm_oracle(pt))

    ys2, b2 = build(2, 2)
    print("B2(2)(1,3) =", b2[2].subs({ys2[0]: 1, ys2[1]: 3}))

    # Degeneracy residual at n=1.
    k = sp.Symbol("kappa")
    x1 = ys[0]
    res = sp.factor(k / 2 * script_l(-1, script_l(-1, b58[1], [x1]), [x1]) - 2 * script_l(-2, b58[1], [x1]))
    print("degeneracy n=1 alpha=5/8:", res, " at kappa=2,x1=1:", res.subs({k: 2, x1: 1}))

    # Bubble identity with the script-L realization.
    for kap in [R(2), R(8, 3), R(3)]:
        h = (6 - kap) / (2 * kap)
        lam = (8 - 3 * kap) * h
        _, bh = build(h, 2)
        for n in range(3):
            xs = list(ys[:n])
            lhs = kap / 2 * script_l(-1, script_l(-1, bh[n], xs), xs) - 2 * script_l(-2, bh[n], xs)
            lhs += lam * u_apply(bh, xs) if n > 0 else 0
            print(f"fw9 kappa={kap} n={n}:", sp.simplify(lhs))
    _, bh = build(1, 1)
    xs = [ys[0]]
    r = 1 * script_l(-1, script_l(-1, bh[1], xs), xs) - 2 * script_l(-2, bh[1], xs)
    print("fw9 kappa=2 lambda=0 n=1:", sp.factor(r))

    a, b = sp.symbols("a b")
    print("T2 =", sp.factor(bubble_t(2, [a, b])))
    print("T3(1,2,3) =", bubble_t(3, [R(1), R(2), R(3)]))


if __name__ == "__main__":
    main()
