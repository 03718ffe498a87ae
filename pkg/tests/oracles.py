"""Independent reference computations used by several test modules."""

import numpy as np

from presekit import linalg, repmod


def coker_hom_oracle(f, g):
    """dim Coker(Hom(P0', N) -> Hom(P1', N)) with N = Coker g, built from N's arrow matrices."""
    A = f.algebra
    N = repmod.cokernel(g)
    rows = [N.dims[v] for v in f.P1]
    cols = [N.dims[w] for w in f.P0]
    m = np.zeros((sum(rows), sum(cols)), dtype=np.int64)
    r0 = 0
    for j, v in enumerate(f.P1):
        c0 = 0
        for i, w in enumerate(f.P0):
            m[r0:r0 + rows[j], c0:c0 + cols[i]] = N.element_action(f.F[j, i], v, w)
            c0 += cols[i]
        r0 += rows[j]
    rk = linalg.rank(m, A.p) if m.size else 0
    return m.shape[0] - rk


def hom_space_dim(A, src, dst):
    return sum(len(A.elems(v, w)) for v in src for w in dst)
