"""Compiled inner loops for tableau updates and the square-root gate.

Strings travel as ``(phi, z, x)`` triples of plain ``uint8`` arrays so that a
whole braid update is one compiled call. With per-operation numpy calls the
interpreter overhead swamps the quadratic work below a few thousand sites.
All functions here trust their callers; argument validation lives in the
Python wrappers.
"""
import numba
import numpy as np

jit = numba.njit(cache=True, nogil=True)

OK = 0
NOT_SQRT = 1
LAMBDA_NOT_P_TYPE = 2
PAIR_AT_BOUNDARY = 3
PAIR_MISMATCH = 4
LAST_BRAID_SET = 5

MESSAGES = {
    NOT_SQRT: "square-root generator does not square to -1",
    LAMBDA_NOT_P_TYPE: "Lambda chain did not map to a phase-free p-type string",
    PAIR_AT_BOUNDARY: "branch pair ends at the last site",
    PAIR_MISMATCH: "branches do not differ exactly at w, w+1",
    LAST_BRAID_SET: "b[n-1] became nonzero",
}


@jit
def dot(a, b):
    acc = 0
    for i in range(a.size):
        acc ^= a[i] & b[i]
    return int(acc)


@jit
def parity(a):
    acc = 0
    for i in range(a.size):
        acc ^= a[i]
    return int(acc)


@jit
def weight(a):
    acc = 0
    for i in range(a.size):
        acc += int(a[i])
    return acc


@jit
def dot_prefix(a, x):
    """``a . prefix_parity(x)`` mod 2."""
    acc = 0
    run = 0
    for i in range(x.size):
        run ^= x[i]
        acc ^= a[i] & run
    return int(acc)


@jit
def multiply(p1, z1, x1, p2, z2, x2):
    sign = dot(z2, x1) ^ dot_prefix(x2, x1) ^ (parity(x2) & parity(x1))
    return (p1 + p2 + 2 * sign) % 4, z1 ^ z2, x1 ^ x2


@jit
def apply_to_basis(phi, z, x, s):
    t = s ^ x
    sign = dot(t, z) ^ dot_prefix(s, x) ^ (parity(x) & parity(s))
    return (phi + 2 * sign) % 4, t


@jit
def conjugate(omega, E, F, G, phi, z, x):
    """``U_C^dag g U_C``: multiply the images of the factors of ``g`` in site order."""
    n = z.size
    oz = np.zeros(n, np.uint8)
    ox = np.zeros(n, np.uint8)
    ph = phi
    for l in range(n):
        zl = z[l]
        xl = x[l]
        if zl == 0 and xl == 0:
            continue
        sign = 0
        if xl:
            ph += omega[l]
            run = 0
            pa = 0
            pr = 0
            for k in range(n):
                rz = (E[l, k] & zl) ^ F[l, k]
                rx = G[l, k]
                ax = ox[k]
                run ^= ax
                sign ^= (rz & ax) ^ (rx & run)
                pa ^= ax
                pr ^= rx
                oz[k] ^= rz
                ox[k] ^= rx
            sign ^= pa & pr
        else:
            for k in range(n):
                rz = E[l, k]
                sign ^= rz & ox[k]
                oz[k] ^= rz
        ph += 2 * int(sign)
    return ph % 4, oz, ox


@jit
def braid_string(beta):
    """``prod_k (c_k ct_{k+1})**beta_k = i**-|beta| c_0**beta_0 prod_k p_k**beta_{k-1} c_k**(beta_{k-1}+beta_k)``."""
    n = beta.size
    z = np.zeros(n, np.uint8)
    x = np.zeros(n, np.uint8)
    prev = 0
    for k in range(n):
        z[k] = prev
        x[k] = prev ^ beta[k]
        prev = beta[k]
    return (-weight(beta)) % 4, z, x


@jit
def braid_flags(b, z, x):
    n = b.size
    beta = np.zeros(n, np.uint8)
    for k in range(n - 1):
        beta[k] = b[k] & (x[k] ^ z[k] ^ z[k + 1])
    return beta


@jit
def conj_ub(b, phi, z, x, forward):
    """``U_B^dag g U_B`` when ``forward``, else ``U_B g U_B^dag``."""
    beta = braid_flags(b, z, x)
    bp, bz, bx = braid_string(beta)
    ph, oz, ox = multiply(bp, bz, bx, phi, z, x)
    if not forward:
        ph = (ph + 2 * weight(beta)) % 4
    return ph, oz, ox


@jit
def right_mult_control(omega, E, F, G, z1, p2, z2, x2):
    """``U_C <- U_C exp(-i pi/4 (I - g1)(I - g2))`` with ``g1 = p**z1``, ``g2 = (p2, z2, x2)``."""
    n = E.shape[0]
    for j in range(n):
        if dot(E[j], x2):
            for k in range(n):
                E[j, k] ^= z1[k]
    px2 = parity(x2)
    for j in range(n):
        Fj = F[j]
        Gj = G[j]
        fx = dot(Fj, x2)
        a1 = 0
        gzx = 0
        gpre = 0
        pg = 0
        run = 0
        for k in range(n):
            g = Gj[k]
            run ^= x2[k]
            a1 ^= g & z1[k]
            gzx ^= g & (z2[k] ^ x2[k])
            gpre ^= g & run
            pg ^= g
        a2 = fx ^ gzx ^ (px2 & pg)
        if a1:
            sign = fx ^ gpre ^ (pg & px2)
            omega[j] = (omega[j] + p2 + 2 * int(sign) + 2 * int(a2)) % 4
            for k in range(n):
                Fj[k] ^= z2[k]
                Gj[k] ^= x2[k]
        if a2:
            for k in range(n):
                Fj[k] ^= z1[k]


@jit
def right_mult_phase_gate(omega, F, G, z, vartheta):
    """``U_C <- U_C exp(-i (-1)**vartheta pi/4 (I - p**z))``."""
    n = F.shape[0]
    step = 1 if vartheta == 0 else -1
    for j in range(n):
        if dot(G[j], z):
            omega[j] = (omega[j] - step) % 4
            for k in range(n):
                F[j, k] ^= z[k]


@jit
def lambda_chain(m, n):
    """``Lambda_{m0+1,m1} Lambda_{m2,m3} ...`` written out directly.

    Each factor is ``i**d c_{i1} p_{i1+2} p_{i1+4} ... c_{i2}`` (``d = i2 - i1``)
    with a p tail over all sites after ``i2`` when ``d`` is odd; factors on
    disjoint ranges multiply without a reordering sign.
    """
    z = np.zeros(n, np.uint8)
    x = np.zeros(n, np.uint8)
    tail = np.zeros(n + 1, np.uint8)
    phi = 0
    for q in range(m.size // 2):
        i1 = m[0] + 1 if q == 0 else m[2 * q]
        i2 = m[2 * q + 1]
        d = i2 - i1
        if d == 0:
            continue
        phi += d
        x[i1] ^= 1
        x[i2] ^= 1
        for k in range(i1 + 2, i2 + 1, 2):
            z[k] ^= 1
        if d % 2 == 1:
            tail[i2 + 1] ^= 1
    run = 0
    for k in range(n):
        run ^= tail[k]
        z[k] ^= run
    return phi % 4, z, x


@jit
def sqrt_gate(omega, E, F, G, b, s, gphi, gz, gx):
    """Apply ``(1 + g)/sqrt(2)`` (``g**2 = -1``, even parity) to the state.

    Updates the tableau, ``b`` and ``s`` in place and returns
    ``(phase increment mod 8, status)``.
    """
    n = s.size
    p, z, x = conjugate(omega, E, F, G, gphi, gz, gx)
    p, z, x = conj_ub(b, p, z, x, True)
    theta, t = apply_to_basis(p, z, x, s)
    diff = s ^ t
    if not diff.any():
        # |s> is an eigenvector, so the gate is a pure phase (1 + i**theta)/sqrt(2)
        if theta % 2 == 0:
            return 0, NOT_SQRT
        return (1 if theta == 1 else 7), OK

    dphi = 0
    s_state = s
    s = s.copy()
    zero_n = np.zeros(n, np.uint8)

    # fold the pair into one differing at two neighbouring sites w, w+1
    nseg = n - weight(b)
    v = np.empty(nseg, np.int64)
    odd = np.zeros(nseg, np.uint8)
    seg = 0
    for k in range(n):
        odd[seg] ^= diff[k]
        if b[k] == 0:
            v[seg] = k
            seg += 1
    j = -1
    for q in range(nseg):
        if odd[q]:
            j = q
            break
    if j >= 0:
        lo = v[j - 1] + 1 if j > 0 else 0
        inside = np.zeros(n, np.uint8)
        inside[lo:v[j] + 1] = 1
        if dot(inside, s):
            s, t = t, s
            dphi += 2 * theta
            theta = (-theta) % 4
        w = v[j - 1] if j > 0 else v[0]
        if w >= n - 1:
            return dphi % 8, PAIR_AT_BOUNDARY
        target = diff.copy()
        target[w] ^= 1
        target[w + 1] ^= 1
        hp = dot_prefix(target, target) ^ parity(target)
        th, t = apply_to_basis(hp, zero_n, target, t)
        p2, z2, x2 = conj_ub(b, hp, zero_n, target, False)
        right_mult_control(omega, E, F, G, inside, p2, z2, x2)
    else:
        m = np.flatnonzero(diff)
        w = m[0]
        if w >= n - 1:
            return dphi % 8, PAIR_AT_BOUNDARY
        lp, lz, lx = lambda_chain(m, n)
        th, t = apply_to_basis(lp, lz, lx, t)
        p1, z1, x1 = conj_ub(b, lp, lz, lx, False)
        if x1.any() or p1 != 0:
            return dphi % 8, LAMBDA_NOT_P_TYPE
        ew = np.zeros(n, np.uint8)
        ew[w] = 1
        p2, z2, x2 = conj_ub(b, 2 * int(s[w]), ew, zero_n, False)
        right_mult_control(omega, E, F, G, z1, p2, z2, x2)
    theta = (theta + th) % 4
    for k in range(n):
        expect = s[k] ^ (1 if k == w or k == w + 1 else 0)
        if t[k] != expect:
            return dphi % 8, PAIR_MISMATCH

    # absorb the pair into B_w
    cw = np.zeros(n, np.uint8)
    cw[w] = 1
    cn = np.zeros(n, np.uint8)
    cn[w + 1] = 1
    ap, az, ax = multiply(0, zero_n, cw, 3, cn, cn)
    a, s_pair = apply_to_basis(ap, az, ax, s)
    if theta % 2 == 0:
        # the pair is an eigenvector of c_w ct_{w+1}, so B_w contributes a phase
        if b[w]:
            lam = (theta - a + 2) % 4
            dphi += -1 if lam == 1 else 1
            b[w] = 0
        tail = np.zeros(n, np.uint8)
        tail[w + 1:] = 1
        flip = dot(tail, s)
        if flip:
            dphi -= 2
        right_mult_phase_gate(omega, F, G, tail, flip)
        theta = (theta + 1) % 4
    if theta == (a + 2) % 4:
        u = s
    else:
        u = s_pair
        dphi += 2 * a
    if b[w] == 0:
        b[w] = 1
        s_out = u
    else:
        # B_w**2 = -c_w ct_{w+1}
        b[w] = 0
        au, s_out = apply_to_basis(ap, az, ax, u)
        dphi += 4 + 2 * au
    s_state[:] = s_out
    return dphi % 8, (OK if b[n - 1] == 0 else LAST_BRAID_SET)


@jit
def _pair(n, j, k):
    """``c_j c_k`` in canonical form."""
    zero = np.zeros(n, np.uint8)
    xj = np.zeros(n, np.uint8)
    xj[j] = 1
    xk = np.zeros(n, np.uint8)
    xk[k] = 1
    return multiply(0, zero, xj, 0, zero, xk)


@jit
def braid_gate(omega, E, F, G, b, s, j, k):
    """``exp(pi/4 c_j c_k)``."""
    p, z, x = _pair(s.size, j, k)
    return sqrt_gate(omega, E, F, G, b, s, p, z, x)


@jit
def undo_braids(inv_omega, inv_E, inv_F, inv_G, bra_b, omega, E, F, G, b, s):
    """Apply ``exp(-i pi/4 Gamma_j)`` for every ``bra_b[j] = 1``, where
    ``Gamma_j = U i c_j ct_{j+1} U^dag`` and ``(inv_*)`` is the tableau of ``U^dag``.
    """
    n = s.size
    zero = np.zeros(n, np.uint8)
    dphi = 0
    for j in range(n - 1):
        if not bra_b[j]:
            continue
        cj = np.zeros(n, np.uint8)
        cj[j] = 1
        cn = np.zeros(n, np.uint8)
        cn[j + 1] = 1
        p, z, x = multiply(1, zero, cj, 3, cn, cn)
        p, z, x = conjugate(inv_omega, inv_E, inv_F, inv_G, p, z, x)
        # exp(-i pi/4 Gamma) = (1 - i Gamma)/sqrt(2)
        d, status = sqrt_gate(omega, E, F, G, b, s, (p + 3) % 4, z, x)
        dphi += d
        if status != OK:
            return dphi % 8, status
    return dphi % 8, OK
