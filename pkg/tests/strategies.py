"""Shared hypothesis strategies."""
from hypothesis import strategies as st

from hallk.coeff import QT, Laurent, RationalChar

exponent = st.integers(-5, 5)
coef = st.integers(-4, 4)


def laurents(vars=QT, max_terms=4):
    n = len(vars)
    return st.dictionaries(st.tuples(*[exponent] * n), coef, max_size=max_terms).map(lambda d: Laurent(d, vars))


def nonzero_laurents(vars=QT, max_terms=3):
    return laurents(vars, max_terms).filter(lambda x: not x.is_zero())


def rationals(vars=QT):
    return st.builds(lambda n, d: RationalChar(n, d, vars), laurents(vars, 3), nonzero_laurents(vars, 2))


def random_single_word(rng, n_vertices, max_len=4, loop_range=4):
    """A random word of single-vertex generators on type A."""
    from hallk.symbols import F

    length = rng.randint(1, max_len)
    return tuple(
        F.single(rng.randint(1, n_vertices), rng.randint(-loop_range, loop_range)) for _ in range(length)
    )


def symbols_on(n_vertices, loop_range=3):
    """Single and interval generators on type A with n_vertices vertices."""
    from hallk.symbols import F

    loops = st.integers(-loop_range, loop_range)

    def interval(ij):
        i, j = ij
        return st.lists(loops, min_size=j - i + 1, max_size=j - i + 1).map(lambda ls: F(i, j, tuple(ls)))

    ends = st.integers(1, n_vertices).flatmap(lambda i: st.tuples(st.just(i), st.integers(i, n_vertices)))
    return ends.flatmap(interval)


def random_element(rng, alg, max_terms=3, max_len=3):
    """A random homogeneous element: one dimension vector, mixed words."""
    from hallk.coeff import Laurent
    from hallk.symbols import F, P2

    n = len(alg.quiver.vertices)
    base = random_single_word(rng, n, max_len)
    out = None
    for _ in range(rng.randint(1, max_terms)):
        word = list(base)
        rng.shuffle(word)
        # occasionally fuse two adjacent-vertex singles into an interval,
        # or two same-vertex singles into a P2
        for k in range(len(word) - 1):
            x, y = word[k], word[k + 1]
            if isinstance(x, F) and isinstance(y, F) and x.is_single and y.is_single and rng.random() < 0.5:
                if y.i == x.i + 1:
                    word[k : k + 2] = [F(x.i, y.i, (x.l, y.l))]
                    break
                if y.i == x.i:
                    # a w1 + b w2 has loop grade a + 2b; keep the grade of x y
                    total, a = x.l + y.l, rng.randint(0, 3)
                    a += (total - a) % 2
                    word[k : k + 2] = [P2.from_omega(x.i, a, (total - a) // 2)]
                    break
        coef = Laurent(
            {(rng.randint(-3, 3), rng.randint(-2, 2)): rng.choice([-3, -2, -1, 1, 2, 5]) for _ in range(rng.randint(1, 3))}
        )
        if coef.is_zero():
            coef = Laurent.const(1)
        term = alg.word(*word, coef=coef)
        out = term if out is None else out + term
    return out
