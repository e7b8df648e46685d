"""Case-by-case extremal dimensions, written out by hand as an oracle for the brute-force search."""


def symmetric_extremal(n, r):
    if n == 4:
        if r == 1:
            return 13, {(0, 1), (1, 1), (2, 2)}
        return 12 * r + 1, {(2, 2)}
    if r == 1:
        return n * n - n + 1, {(0, 1), (1, 1)}
    return n - 2 + r * (n * n - 2 * n + 3), {(1, 1)}


def skew_extremal(n, r):
    if n == 4:
        return 12 * r + 3, {(2, 2)}
    if n == 6:
        return 27 * r + 6, {(3, 3)}
    if n == 8 and r == 1:
        return 58, {(4, 4), (1, 1)}
    return (n - 1) ** 2 * r + 2 * r + n - 1, {(1, 1)}


def extremal_claim(kind, n, r):
    return symmetric_extremal(n, r) if kind == "symmetric" else skew_extremal(n, r)
