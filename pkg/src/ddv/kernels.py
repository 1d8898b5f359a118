"""Hot numeric kernels for the recurrent sequence autoencoders.

Variable-length visit sequences are packed CSR-style: ``x_flat`` stacks every
record's per-visit vectors row-wise and ``offsets[i]:offsets[i+1]`` delimits
record ``i``.  Gate weights use a single fused layout: ``W`` is
``(in_dim, 3*hid)`` and ``U`` is ``(hid, 3*hid)`` with the reset / update /
candidate blocks side by side, so each step costs two small matmuls.

All kernels are plain numpy functions compiled with ``numba.njit`` when the
numba backend is active (see :mod:`ddv.backend`); the undecorated ``*_py``
names stay importable for the fallback benchmark.  Gradients accumulate
in-place into caller-owned arrays and losses are returned as plain sums so
callers choose the normalization.
"""

import numpy as np

from .backend import jit_kernel


def _sigmoid_py(v):
    return 1.0 / (1.0 + np.exp(-np.minimum(np.maximum(v, -60.0), 60.0)))


_sigmoid = jit_kernel(_sigmoid_py)


def gru_encode_batch_py(x_flat, offsets, W, U, b, out_z):
    """Run the encoder cell over each record, writing final hidden states to out_z."""
    n = offsets.shape[0] - 1
    p = U.shape[0]
    for i in range(n):
        s, e = offsets[i], offsets[i + 1]
        t_len = e - s
        a = np.dot(x_flat[s:e], W) + b
        h = np.zeros(p)
        for t in range(t_len):
            hu = np.dot(h, U)
            r = _sigmoid(a[t, 0:p] + hu[0:p])
            u = _sigmoid(a[t, p : 2 * p] + hu[p : 2 * p])
            nn = np.tanh(a[t, 2 * p : 3 * p] + r * hu[2 * p : 3 * p])
            h = (1.0 - u) * nn + u * h
        out_z[i, :] = h


def gru_decode_batch_py(z, lengths, offsets, W, U, b, Wo, bo, y_flat):
    """Unroll the decoder cell from each z, feeding each output back as next input."""
    n = z.shape[0]
    p = U.shape[0]
    q = Wo.shape[1]
    for i in range(n):
        t_len = lengths[i]
        s = offsets[i]
        h = z[i].copy()
        xin = np.zeros(q)
        for t in range(t_len):
            a = np.dot(xin, W) + b
            hu = np.dot(h, U)
            r = _sigmoid(a[0:p] + hu[0:p])
            u = _sigmoid(a[p : 2 * p] + hu[p : 2 * p])
            nn = np.tanh(a[2 * p : 3 * p] + r * hu[2 * p : 3 * p])
            h = (1.0 - u) * nn + u * h
            y = np.dot(h, Wo) + bo
            y_flat[s + t, :] = y
            xin = y


def seq_ae_batch_loss_grads_py(
    x_flat,
    offsets,
    We,
    Ue,
    be,
    Wd,
    Ud,
    bd,
    Wo,
    bo,
    gWe,
    gUe,
    gbe,
    gWd,
    gUd,
    gbd,
    gWo,
    gbo,
):
    """Squared-error reconstruction loss and gradients for the sequence autoencoder.

    Returns (loss_sum, n_elements); gradients are accumulated in-place,
    un-normalized, so callers divide by n_elements for a mean-per-element loss.
    """
    n = offsets.shape[0] - 1
    p = Ue.shape[0]
    q = x_flat.shape[1]
    loss = 0.0
    n_elems = 0
    for i in range(n):
        s, e = offsets[i], offsets[i + 1]
        t_len = e - s
        x_rec = x_flat[s:e]

        # encoder forward
        ae = np.dot(x_rec, We) + be
        He = np.zeros((t_len + 1, p))
        Re = np.empty((t_len, p))
        Uge = np.empty((t_len, p))
        Ne = np.empty((t_len, p))
        HUne = np.empty((t_len, p))
        for t in range(t_len):
            hu = np.dot(He[t], Ue)
            r = _sigmoid(ae[t, 0:p] + hu[0:p])
            u = _sigmoid(ae[t, p : 2 * p] + hu[p : 2 * p])
            hun = hu[2 * p : 3 * p]
            nn = np.tanh(ae[t, 2 * p : 3 * p] + r * hun)
            He[t + 1] = (1.0 - u) * nn + u * He[t]
            Re[t] = r
            Uge[t] = u
            Ne[t] = nn
            HUne[t] = hun

        # decoder forward, feeding previous output back in
        Hd = np.zeros((t_len + 1, p))
        Hd[0] = He[t_len]
        Y = np.empty((t_len, q))
        Xin = np.zeros((t_len, q))
        Rd = np.empty((t_len, p))
        Ugd = np.empty((t_len, p))
        Nd = np.empty((t_len, p))
        HUnd = np.empty((t_len, p))
        xin = np.zeros(q)
        for t in range(t_len):
            a = np.dot(xin, Wd) + bd
            hu = np.dot(Hd[t], Ud)
            r = _sigmoid(a[0:p] + hu[0:p])
            u = _sigmoid(a[p : 2 * p] + hu[p : 2 * p])
            hun = hu[2 * p : 3 * p]
            nn = np.tanh(a[2 * p : 3 * p] + r * hun)
            Hd[t + 1] = (1.0 - u) * nn + u * Hd[t]
            y = np.dot(Hd[t + 1], Wo) + bo
            Xin[t] = xin
            Y[t] = y
            Rd[t] = r
            Ugd[t] = u
            Nd[t] = nn
            HUnd[t] = hun
            xin = y

        diff = Y - x_rec
        loss += np.sum(diff * diff)
        n_elems += t_len * q

        # decoder backward
        DY = np.empty((t_len, q))
        DAd = np.empty((t_len, 3 * p))
        DHUd = np.empty((t_len, 3 * p))
        dxin_next = np.zeros(q)
        dh_next = np.zeros(p)
        for t in range(t_len - 1, -1, -1):
            dy = 2.0 * diff[t] + dxin_next
            DY[t] = dy
            dh = dh_next + np.dot(Wo, dy)
            h_prev = Hd[t]
            r = Rd[t]
            u = Ugd[t]
            nn = Nd[t]
            hun = HUnd[t]
            du = dh * (h_prev - nn)
            dn = dh * (1.0 - u)
            dh_prev = dh * u
            dn_pre = dn * (1.0 - nn * nn)
            dr = dn_pre * hun
            dhu_n = dn_pre * r
            du_pre = du * u * (1.0 - u)
            dr_pre = dr * r * (1.0 - r)
            DAd[t, 0:p] = dr_pre
            DAd[t, p : 2 * p] = du_pre
            DAd[t, 2 * p : 3 * p] = dn_pre
            DHUd[t, 0:p] = dr_pre
            DHUd[t, p : 2 * p] = du_pre
            DHUd[t, 2 * p : 3 * p] = dhu_n
            dh_prev += np.dot(Ud, DHUd[t])
            dxin_next = np.dot(Wd, DAd[t])
            dh_next = dh_prev
        gWo += np.dot(Hd[1:].T.copy(), DY)
        gbo += DY.sum(axis=0)
        gWd += np.dot(Xin.T.copy(), DAd)
        gbd += DAd.sum(axis=0)
        gUd += np.dot(Hd[:t_len].T.copy(), DHUd)

        # encoder backward, seeded by dz = d(loss)/d(Hd[0])
        DAe = np.empty((t_len, 3 * p))
        DHUe = np.empty((t_len, 3 * p))
        dh = dh_next
        for t in range(t_len - 1, -1, -1):
            h_prev = He[t]
            r = Re[t]
            u = Uge[t]
            nn = Ne[t]
            hun = HUne[t]
            du = dh * (h_prev - nn)
            dn = dh * (1.0 - u)
            dh_prev = dh * u
            dn_pre = dn * (1.0 - nn * nn)
            dr = dn_pre * hun
            dhu_n = dn_pre * r
            du_pre = du * u * (1.0 - u)
            dr_pre = dr * r * (1.0 - r)
            DAe[t, 0:p] = dr_pre
            DAe[t, p : 2 * p] = du_pre
            DAe[t, 2 * p : 3 * p] = dn_pre
            DHUe[t, 0:p] = dr_pre
            DHUe[t, p : 2 * p] = du_pre
            DHUe[t, 2 * p : 3 * p] = dhu_n
            dh = dh_prev + np.dot(Ue, DHUe[t])
        gWe += np.dot(x_rec.T.copy(), DAe)
        gbe += DAe.sum(axis=0)
        gUe += np.dot(He[:t_len].T.copy(), DHUe)

    return loss, n_elems


def attack_decoder_loss_grads_py(
    z,
    codes_flat,
    offsets,
    Wd,
    Ud,
    bd,
    Wo,
    bo,
    W3,
    b3,
    W4,
    b4,
    pos_weight,
    gWd,
    gUd,
    gbd,
    gWo,
    gbo,
    gW3,
    gb3,
    gW4,
    gb4,
):
    """Weighted-BCE loss and gradients for the full adversarial decode path.

    Maps each fixed input vector z[i] through the recurrent decoder and the
    per-step code head, scoring against the record's binary code rows.
    Returns (loss_sum, n_elements) with gradients accumulated in-place.
    """
    n = z.shape[0]
    p = Ud.shape[0]
    q = Wo.shape[1]
    d = W4.shape[1]
    eps = 1e-12
    loss = 0.0
    n_elems = 0
    for i in range(n):
        s, e = offsets[i], offsets[i + 1]
        t_len = e - s
        codes = codes_flat[s:e]

        Hd = np.zeros((t_len + 1, p))
        Hd[0] = z[i]
        Y = np.empty((t_len, q))
        Xin = np.zeros((t_len, q))
        Rd = np.empty((t_len, p))
        Ugd = np.empty((t_len, p))
        Nd = np.empty((t_len, p))
        HUnd = np.empty((t_len, p))
        xin = np.zeros(q)
        for t in range(t_len):
            a = np.dot(xin, Wd) + bd
            hu = np.dot(Hd[t], Ud)
            r = _sigmoid(a[0:p] + hu[0:p])
            u = _sigmoid(a[p : 2 * p] + hu[p : 2 * p])
            hun = hu[2 * p : 3 * p]
            nn = np.tanh(a[2 * p : 3 * p] + r * hun)
            Hd[t + 1] = (1.0 - u) * nn + u * Hd[t]
            y = np.dot(Hd[t + 1], Wo) + bo
            Xin[t] = xin
            Y[t] = y
            Rd[t] = r
            Ugd[t] = u
            Nd[t] = nn
            HUnd[t] = hun
            xin = y

        # code head: y -> tanh hidden -> sigmoid logits, weighted BCE
        H2 = np.tanh(np.dot(Y, W3) + b3)
        P = _sigmoid(np.dot(H2, W4) + b4)
        w = 1.0 + (pos_weight - 1.0) * codes
        pc = np.minimum(np.maximum(P, eps), 1.0 - eps)
        loss += np.sum(w * -(codes * np.log(pc) + (1.0 - codes) * np.log(1.0 - pc)))
        n_elems += t_len * d

        DL = w * (P - codes)
        gW4 += np.dot(H2.T.copy(), DL)
        gb4 += DL.sum(axis=0)
        DPre2 = np.dot(DL, W4.T) * (1.0 - H2 * H2)
        gW3 += np.dot(Y.T.copy(), DPre2)
        gb3 += DPre2.sum(axis=0)
        DYmlp = np.dot(DPre2, W3.T)

        DY = np.empty((t_len, q))
        DAd = np.empty((t_len, 3 * p))
        DHUd = np.empty((t_len, 3 * p))
        dxin_next = np.zeros(q)
        dh_next = np.zeros(p)
        for t in range(t_len - 1, -1, -1):
            dy = DYmlp[t] + dxin_next
            DY[t] = dy
            dh = dh_next + np.dot(Wo, dy)
            h_prev = Hd[t]
            r = Rd[t]
            u = Ugd[t]
            nn = Nd[t]
            hun = HUnd[t]
            du = dh * (h_prev - nn)
            dn = dh * (1.0 - u)
            dh_prev = dh * u
            dn_pre = dn * (1.0 - nn * nn)
            dr = dn_pre * hun
            dhu_n = dn_pre * r
            du_pre = du * u * (1.0 - u)
            dr_pre = dr * r * (1.0 - r)
            DAd[t, 0:p] = dr_pre
            DAd[t, p : 2 * p] = du_pre
            DAd[t, 2 * p : 3 * p] = dn_pre
            DHUd[t, 0:p] = dr_pre
            DHUd[t, p : 2 * p] = du_pre
            DHUd[t, 2 * p : 3 * p] = dhu_n
            dh_prev += np.dot(Ud, DHUd[t])
            dxin_next = np.dot(Wd, DAd[t])
            dh_next = dh_prev
        gWo += np.dot(Hd[1:].T.copy(), DY)
        gbo += DY.sum(axis=0)
        gWd += np.dot(Xin.T.copy(), DAd)
        gbd += DAd.sum(axis=0)
        gUd += np.dot(Hd[:t_len].T.copy(), DHUd)

    return loss, n_elems


gru_encode_batch = jit_kernel(gru_encode_batch_py)
gru_decode_batch = jit_kernel(gru_decode_batch_py)
seq_ae_batch_loss_grads = jit_kernel(seq_ae_batch_loss_grads_py)
attack_decoder_loss_grads = jit_kernel(attack_decoder_loss_grads_py)
