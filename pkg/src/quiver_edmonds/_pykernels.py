"""Pure-Python fraction-free elimination on lists of Python ints.

Mirrors the native kernel exactly; used when the extension is unavailable
or when entries are too large for 64-bit minors.
"""


def bareiss_det(a):
    n = len(a)
    if n == 0:
        return 1
    a = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def bareiss_rank(a):
    a = [list(row) for row in a]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        for p in range(r, rows):
            if a[p][c] != 0:
                break
        else:
            continue
        a[r], a[p] = a[p], a[r]
        arc = a[r][c]
        rowr = a[r]
        for i in range(r + 1, rows):
            rowi = a[i]
            aic = rowi[c]
            if aic:
                for j in range(c + 1, cols):
                    rowi[j] = (rowi[j] * arc - aic * rowr[j]) // prev
            else:
                for j in range(c + 1, cols):
                    rowi[j] = (rowi[j] * arc) // prev
            rowi[c] = 0
        prev = arc
        r += 1
    return r
