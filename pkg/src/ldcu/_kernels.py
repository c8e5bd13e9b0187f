"""Hot loops for reconstruction and numerical fluxes (numba).

Everything here is written scalar-unrolled for a single core: the per
interface work is straight-line code so LLVM can vectorize across the
loop.  Only the x-direction 2-D kernels exist; y-direction sweeps are
obtained by the exact symmetry

    G(U) = S F(S U),   S = swap of the two momentum components,

applied on transposed arrays, so both directions share one code path.

Slope evaluation uses the division-free form of the SBM limiter:
phi(num/den)*den rewritten in terms of min/max of the one-sided
differences, which is algebraically identical for den != 0.
"""

import numpy as np
from numba import njit

DENOM_GUARD = 1e-12
GAP_GUARD = 1e-12


@njit(inline="always")
def _lim(gm, g0, gp, th, ta):
    """phi((gp-g0)/(g0-gm)) * (g0-gm), guarded like limited_slope."""
    den = g0 - gm
    num = gp - g0
    sc = abs(gm)
    if abs(g0) > sc:
        sc = abs(g0)
    if abs(gp) > sc:
        sc = abs(gp)
    if sc < 1.0:
        sc = 1.0
    if abs(den) <= DENOM_GUARD * sc:
        return 0.0
    if den > 0.0:
        a = num
        b = den
        s = 1.0
    else:
        a = -num
        b = -den
        s = -1.0
    if a <= 0.0:
        return 0.0
    mn = a if a < b else b
    mx = a if a > b else b
    v2 = (1.0 - ta) * mx + ta * mn
    v1 = th * mn
    v = v1 if v1 < v2 else v2
    return s * v


@njit(cache=True, fastmath=True)
def recon_1d(U0, U1, U2, gamma, floor, flags, th_r, ta_r, th_s, ta_s, Um, Up):
    """Characteristic SBM reconstruction, 3-component system.

    U0..U2 are padded cell averages (two ghosts each side); interface a
    sits between padded cells a+1 and a+2.  flags is uint8 per padded
    cell; a flagged cell reconstructs with (th_r, ta_r), the rest with
    (th_s, ta_s).  Writes point values Um (left of interface) and Up.
    """
    n = U0.shape[0] - 3
    g1 = gamma - 1.0
    for a in range(n):
        L = a + 1
        R = a + 2
        rho = 0.5 * (U0[L] + U0[R])
        m = 0.5 * (U1[L] + U1[R])
        E = 0.5 * (U2[L] + U2[R])
        ir = 1.0 / rho
        u = m * ir
        ek = 0.5 * u * u
        p = g1 * (E - rho * ek)
        if p < floor:
            p = floor
        c2 = gamma * p * ir
        c = np.sqrt(c2)
        ic2 = 1.0 / c2
        i2c2 = 0.5 * ic2
        uc = u * c
        H = (E + p) * ir
        t1 = g1 * ek
        a00 = (t1 + uc) * i2c2
        a01 = (-g1 * u - c) * i2c2
        a02 = g1 * i2c2
        a10 = (c2 - t1) * ic2
        a11 = g1 * u * ic2
        a12 = -g1 * ic2
        a20 = (t1 - uc) * i2c2
        a21 = (c - g1 * u) * i2c2
        a22 = g1 * i2c2
        w00 = a00 * U0[a] + a01 * U1[a] + a02 * U2[a]
        w01 = a00 * U0[L] + a01 * U1[L] + a02 * U2[L]
        w02 = a00 * U0[R] + a01 * U1[R] + a02 * U2[R]
        w03 = a00 * U0[a + 3] + a01 * U1[a + 3] + a02 * U2[a + 3]
        w10 = a10 * U0[a] + a11 * U1[a] + a12 * U2[a]
        w11 = a10 * U0[L] + a11 * U1[L] + a12 * U2[L]
        w12 = a10 * U0[R] + a11 * U1[R] + a12 * U2[R]
        w13 = a10 * U0[a + 3] + a11 * U1[a + 3] + a12 * U2[a + 3]
        w20 = a20 * U0[a] + a21 * U1[a] + a22 * U2[a]
        w21 = a20 * U0[L] + a21 * U1[L] + a22 * U2[L]
        w22 = a20 * U0[R] + a21 * U1[R] + a22 * U2[R]
        w23 = a20 * U0[a + 3] + a21 * U1[a + 3] + a22 * U2[a + 3]
        if flags[L]:
            thL = th_r
            taL = ta_r
        else:
            thL = th_s
            taL = ta_s
        if flags[R]:
            thR = th_r
            taR = ta_r
        else:
            thR = th_s
            taR = ta_s
        gm0 = w01 + 0.5 * _lim(w00, w01, w02, thL, taL)
        gm1 = w11 + 0.5 * _lim(w10, w11, w12, thL, taL)
        gm2 = w21 + 0.5 * _lim(w20, w21, w22, thL, taL)
        gp0 = w02 - 0.5 * _lim(w01, w02, w03, thR, taR)
        gp1 = w12 - 0.5 * _lim(w11, w12, w13, thR, taR)
        gp2 = w22 - 0.5 * _lim(w21, w22, w23, thR, taR)
        Um[0, a] = gm0 + gm1 + gm2
        Um[1, a] = gm0 * (u - c) + gm1 * u + gm2 * (u + c)
        Um[2, a] = gm0 * (H - uc) + gm1 * ek + gm2 * (H + uc)
        Up[0, a] = gp0 + gp1 + gp2
        Up[1, a] = gp0 * (u - c) + gp1 * u + gp2 * (u + c)
        Up[2, a] = gp0 * (H - uc) + gp1 * ek + gp2 * (H + uc)


@njit(cache=True, fastmath=True)
def flux_1d(Um, Up, gamma, floor, F):
    """Central-upwind flux with anti-diffusion, 3-component system.

    Returns (nfloor, ibad, istar): number of floored density/pressure
    point evaluations, the first interface where flooring happened, and
    the first interface with a non-positive intermediate density
    (each -1 when clean).
    """
    n = Um.shape[1]
    g1 = gamma - 1.0
    nfloor = 0
    ibad = -1
    istar = -1
    for a in range(n):
        rm = Um[0, a]
        mm = Um[1, a]
        Em = Um[2, a]
        rp = Up[0, a]
        mp = Up[1, a]
        Ep = Up[2, a]
        if rm < floor:
            rm = floor
            nfloor += 1
            if ibad < 0:
                ibad = a
        if rp < floor:
            rp = floor
            nfloor += 1
            if ibad < 0:
                ibad = a
        um = mm / rm
        up = mp / rp
        pm = g1 * (Em - 0.5 * mm * um)
        pp = g1 * (Ep - 0.5 * mp * up)
        if pm < floor:
            pm = floor
            nfloor += 1
            if ibad < 0:
                ibad = a
        if pp < floor:
            pp = floor
            nfloor += 1
            if ibad < 0:
                ibad = a
        cm = np.sqrt(gamma * pm / rm)
        cp = np.sqrt(gamma * pp / rp)
        ap = um + cm
        if up + cp > ap:
            ap = up + cp
        if ap < 0.0:
            ap = 0.0
        am = um - cm
        if up - cp < am:
            am = up - cp
        if am > 0.0:
            am = 0.0
        F1m = mm
        F2m = mm * um + pm
        F3m = um * (Em + pm)
        F1p = mp
        F2p = mp * up + pp
        F3p = up * (Ep + pp)
        gap = ap - am
        if gap <= GAP_GUARD * (gap + 0.5 * (cm + cp)):
            F[0, a] = 0.5 * (F1m + F1p)
            F[1, a] = 0.5 * (F2m + F2p)
            F[2, a] = 0.5 * (F3m + F3p)
            continue
        ig = 1.0 / gap
        rs = (ap * rp - am * rm - (F1p - F1m)) * ig
        ms = (ap * mp - am * mm - (F2p - F2m)) * ig
        q0 = 0.0
        q1 = 0.0
        q2 = 0.0
        if rs > 0.0:
            d1 = -am * (rs - rm)
            d2 = ap * (rp - rs)
            if d1 > 0.0 and d2 > 0.0:
                mq = d1 if d1 < d2 else d2
            elif d1 < 0.0 and d2 < 0.0:
                mq = d1 if d1 > d2 else d2
            else:
                mq = 0.0
            us = ms / rs
            q0 = mq
            q1 = mq * us
            q2 = mq * 0.5 * us * us
        elif istar < 0:
            istar = a
        ca = ap * am * ig
        F[0, a] = (ap * F1m - am * F1p) * ig + ca * (rp - rm) + q0
        F[1, a] = (ap * F2m - am * F2p) * ig + ca * (mp - mm) + q1
        F[2, a] = (ap * F3m - am * F3p) * ig + ca * (Ep - Em) + q2
    return nfloor, ibad, istar


@njit(cache=True, fastmath=True)
def recon2d_x(U0, U1, U2, U3, gamma, floor, flags, th_r, ta_r, th_s, ta_s, Um, Up):
    """Characteristic SBM reconstruction along the first spatial axis.

    U0..U3 are padded (nxp, nyp) cell averages of (rho, mn, mt, E) where
    mn is the momentum normal to the sweep and mt the tangential one.
    Um/Up have shape (4, nxp-3, nyp-4): interior rows only.
    """
    nxi = U0.shape[0] - 3
    nyc = U0.shape[1] - 4
    g1 = gamma - 1.0
    for a in range(nxi):
        L = a + 1
        R = a + 2
        for k in range(nyc):
            kp = k + 2
            rho = 0.5 * (U0[L, kp] + U0[R, kp])
            mn = 0.5 * (U1[L, kp] + U1[R, kp])
            mt = 0.5 * (U2[L, kp] + U2[R, kp])
            E = 0.5 * (U3[L, kp] + U3[R, kp])
            ir = 1.0 / rho
            un = mn * ir
            ut = mt * ir
            ek = 0.5 * (un * un + ut * ut)
            p = g1 * (E - rho * ek)
            if p < floor:
                p = floor
            c2 = gamma * p * ir
            c = np.sqrt(c2)
            ic2 = 1.0 / c2
            i2c2 = 0.5 * ic2
            uc = un * c
            H = (E + p) * ir
            t1 = g1 * ek
            # Rinv rows: acoustic-, entropy, shear, acoustic+
            a00 = (t1 + uc) * i2c2
            a01 = (-g1 * un - c) * i2c2
            a02 = -g1 * ut * i2c2
            a03 = g1 * i2c2
            a10 = (c2 - t1) * ic2
            a11 = g1 * un * ic2
            a12 = g1 * ut * ic2
            a13 = -g1 * ic2
            a30 = (t1 - uc) * i2c2
            a31 = (c - g1 * un) * i2c2
            a32 = a02
            a33 = a03
            w00 = a00 * U0[a, kp] + a01 * U1[a, kp] + a02 * U2[a, kp] + a03 * U3[a, kp]
            w01 = a00 * U0[L, kp] + a01 * U1[L, kp] + a02 * U2[L, kp] + a03 * U3[L, kp]
            w02 = a00 * U0[R, kp] + a01 * U1[R, kp] + a02 * U2[R, kp] + a03 * U3[R, kp]
            w03 = a00 * U0[a + 3, kp] + a01 * U1[a + 3, kp] + a02 * U2[a + 3, kp] + a03 * U3[a + 3, kp]
            w10 = a10 * U0[a, kp] + a11 * U1[a, kp] + a12 * U2[a, kp] + a13 * U3[a, kp]
            w11 = a10 * U0[L, kp] + a11 * U1[L, kp] + a12 * U2[L, kp] + a13 * U3[L, kp]
            w12 = a10 * U0[R, kp] + a11 * U1[R, kp] + a12 * U2[R, kp] + a13 * U3[R, kp]
            w13 = a10 * U0[a + 3, kp] + a11 * U1[a + 3, kp] + a12 * U2[a + 3, kp] + a13 * U3[a + 3, kp]
            # shear row is (-ut, 0, 1, 0)
            w20 = U2[a, kp] - ut * U0[a, kp]
            w21 = U2[L, kp] - ut * U0[L, kp]
            w22 = U2[R, kp] - ut * U0[R, kp]
            w23 = U2[a + 3, kp] - ut * U0[a + 3, kp]
            w30 = a30 * U0[a, kp] + a31 * U1[a, kp] + a32 * U2[a, kp] + a33 * U3[a, kp]
            w31 = a30 * U0[L, kp] + a31 * U1[L, kp] + a32 * U2[L, kp] + a33 * U3[L, kp]
            w32 = a30 * U0[R, kp] + a31 * U1[R, kp] + a32 * U2[R, kp] + a33 * U3[R, kp]
            w33 = a30 * U0[a + 3, kp] + a31 * U1[a + 3, kp] + a32 * U2[a + 3, kp] + a33 * U3[a + 3, kp]
            if flags[L, kp]:
                thL = th_r
                taL = ta_r
            else:
                thL = th_s
                taL = ta_s
            if flags[R, kp]:
                thR = th_r
                taR = ta_r
            else:
                thR = th_s
                taR = ta_s
            gm0 = w01 + 0.5 * _lim(w00, w01, w02, thL, taL)
            gm1 = w11 + 0.5 * _lim(w10, w11, w12, thL, taL)
            gm2 = w21 + 0.5 * _lim(w20, w21, w22, thL, taL)
            gm3 = w31 + 0.5 * _lim(w30, w31, w32, thL, taL)
            gp0 = w02 - 0.5 * _lim(w01, w02, w03, thR, taR)
            gp1 = w12 - 0.5 * _lim(w11, w12, w13, thR, taR)
            gp2 = w22 - 0.5 * _lim(w21, w22, w23, thR, taR)
            gp3 = w32 - 0.5 * _lim(w31, w32, w33, thR, taR)
            # back-transform: columns (1, un-c, ut, H-uc), (1, un, ut, ek),
            # (0, 0, 1, ut), (1, un+c, ut, H+uc)
            r_m = gm0 + gm1 + gm3
            Um[0, a, k] = r_m
            Um[1, a, k] = gm0 * (un - c) + gm1 * un + gm3 * (un + c)
            Um[2, a, k] = r_m * ut + gm2
            Um[3, a, k] = gm0 * (H - uc) + gm1 * ek + gm2 * ut + gm3 * (H + uc)
            r_p = gp0 + gp1 + gp3
            Up[0, a, k] = r_p
            Up[1, a, k] = gp0 * (un - c) + gp1 * un + gp3 * (un + c)
            Up[2, a, k] = r_p * ut + gp2
            Up[3, a, k] = gp0 * (H - uc) + gp1 * ek + gp2 * ut + gp3 * (H + uc)


@njit(cache=True, fastmath=True)
def flux2d_x(Um, Up, gamma, floor, q_mode, F):
    """Central-upwind flux along the first spatial axis, 4 components.

    Component order (rho, mn, mt, E) with mn normal to the interface.
    q_mode 1 applies the anti-diffusion analog, 0 drops it.  Returns the
    same diagnostics triple as flux_1d.
    """
    ni = Um.shape[1]
    nk = Um.shape[2]
    g1 = gamma - 1.0
    nfloor = 0
    ibad = -1
    istar = -1
    for a in range(ni):
        for k in range(nk):
            rm = Um[0, a, k]
            mm = Um[1, a, k]
            nm = Um[2, a, k]
            Em = Um[3, a, k]
            rp = Up[0, a, k]
            mp = Up[1, a, k]
            np_ = Up[2, a, k]
            Ep = Up[3, a, k]
            if rm < floor:
                rm = floor
                nfloor += 1
                if ibad < 0:
                    ibad = a * nk + k
            if rp < floor:
                rp = floor
                nfloor += 1
                if ibad < 0:
                    ibad = a * nk + k
            um = mm / rm
            vm = nm / rm
            up = mp / rp
            vp = np_ / rp
            pm = g1 * (Em - 0.5 * (mm * um + nm * vm))
            pp = g1 * (Ep - 0.5 * (mp * up + np_ * vp))
            if pm < floor:
                pm = floor
                nfloor += 1
                if ibad < 0:
                    ibad = a * nk + k
            if pp < floor:
                pp = floor
                nfloor += 1
                if ibad < 0:
                    ibad = a * nk + k
            cm = np.sqrt(gamma * pm / rm)
            cp = np.sqrt(gamma * pp / rp)
            ap = um + cm
            if up + cp > ap:
                ap = up + cp
            if ap < 0.0:
                ap = 0.0
            am = um - cm
            if up - cp < am:
                am = up - cp
            if am > 0.0:
                am = 0.0
            F1m = mm
            F2m = mm * um + pm
            F3m = nm * um
            F4m = um * (Em + pm)
            F1p = mp
            F2p = mp * up + pp
            F3p = np_ * up
            F4p = up * (Ep + pp)
            gap = ap - am
            if gap <= GAP_GUARD * (gap + 0.5 * (cm + cp)):
                F[0, a, k] = 0.5 * (F1m + F1p)
                F[1, a, k] = 0.5 * (F2m + F2p)
                F[2, a, k] = 0.5 * (F3m + F3p)
                F[3, a, k] = 0.5 * (F4m + F4p)
                continue
            ig = 1.0 / gap
            q0 = 0.0
            q1 = 0.0
            q2 = 0.0
            q3 = 0.0
            if q_mode == 1:
                rs = (ap * rp - am * rm - (F1p - F1m)) * ig
                ms = (ap * mp - am * mm - (F2p - F2m)) * ig
                ns = (ap * np_ - am * nm - (F3p - F3m)) * ig
                if rs > 0.0:
                    d1 = -am * (rs - rm)
                    d2 = ap * (rp - rs)
                    if d1 > 0.0 and d2 > 0.0:
                        mq = d1 if d1 < d2 else d2
                    elif d1 < 0.0 and d2 < 0.0:
                        mq = d1 if d1 > d2 else d2
                    else:
                        mq = 0.0
                    us = ms / rs
                    vs = ns / rs
                    q0 = mq
                    q1 = mq * us
                    q2 = mq * vs
                    q3 = mq * 0.5 * (us * us + vs * vs)
                elif istar < 0:
                    istar = a * nk + k
            ca = ap * am * ig
            F[0, a, k] = (ap * F1m - am * F1p) * ig + ca * (rp - rm) + q0
            F[1, a, k] = (ap * F2m - am * F2p) * ig + ca * (mp - mm) + q1
            F[2, a, k] = (ap * F3m - am * F3p) * ig + ca * (np_ - nm) + q2
            F[3, a, k] = (ap * F4m - am * F4p) * ig + ca * (Ep - Em) + q3
    return nfloor, ibad, istar
