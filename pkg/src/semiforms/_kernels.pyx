# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan backend.

Walks bounded integer grids in C and reports *candidate* points: a
superset of the true hits, obtained from int64 or float64 evaluation
with rigorous error margins.  The caller re-checks every candidate with
exact arithmetic, so a false candidate costs time, never correctness;
the margins are chosen so no true hit can be missed.

Two evaluation modes:

* int64: the caller guarantees every Horner intermediate of the scaled
  integer polynomial stays below 2^62 on the box, so values, zero tests
  and p-adic valuations are exact in C.
* float64: values carry a running bound on the accumulated rounding
  error (1e-12 of the absolute-coefficient evaluation, hugely above the
  true error); only usable when no finite places are involved.

Points are enumerated in raw row-major order; callers sort results.
"""

from libc.math cimport fabs, log, pow
from libc.stdlib cimport free, malloc

BACKEND_NAME = "compiled"


cdef long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int _ord(long long v, long long p) nogil:
    # p-adic valuation of a nonzero int64
    cdef int e = 0
    if v < 0:
        v = -v
    while v % p == 0:
        v //= p
        e += 1
    return e


cdef struct PolyData:
    int nterms
    int maxdeg          # max exponent of the last variable
    int *exps           # flat nterms * n
    long long *icoefs   # int64 mode
    double *fcoefs      # float mode
    double *acoefs      # |coefs| for error tracking
    long long den


cdef PolyData _make_poly(list exps, list coefs, object den, int n, bint as_float):
    # as_float skips the int64 fields so coefficients may exceed 2^63
    cdef PolyData pd
    cdef int t, i
    pd.nterms = len(coefs)
    pd.den = 1 if as_float else den
    pd.exps = <int *> malloc(pd.nterms * n * sizeof(int))
    pd.icoefs = <long long *> malloc(pd.nterms * sizeof(long long))
    pd.fcoefs = <double *> malloc(pd.nterms * sizeof(double))
    pd.acoefs = <double *> malloc(pd.nterms * sizeof(double))
    pd.maxdeg = 0
    for t in range(pd.nterms):
        for i in range(n):
            pd.exps[t * n + i] = exps[t * n + i]
        if pd.exps[t * n + n - 1] > pd.maxdeg:
            pd.maxdeg = pd.exps[t * n + n - 1]
        if as_float:
            pd.icoefs[t] = 0
            pd.fcoefs[t] = <double> float(coefs[t])
        else:
            pd.icoefs[t] = coefs[t]
            pd.fcoefs[t] = <double> pd.icoefs[t]
        pd.acoefs[t] = fabs(pd.fcoefs[t])
    return pd


cdef void _free_poly(PolyData *pd):
    free(pd.exps)
    free(pd.icoefs)
    free(pd.fcoefs)
    free(pd.acoefs)


cdef void _rows_int(PolyData *pd, long long *x, int n, long long *row) nogil:
    # row[k] = sum of coef * prefix-monomial over terms with last exponent k
    cdef int t, i, e, k
    cdef long long val
    for k in range(pd.maxdeg + 1):
        row[k] = 0
    for t in range(pd.nterms):
        val = pd.icoefs[t]
        for i in range(n - 1):
            e = pd.exps[t * n + i]
            while e and val:
                val *= x[i]
                e -= 1
        row[pd.exps[t * n + n - 1]] += val


cdef void _rows_float(PolyData *pd, long long *x, int n,
                      double *row, double *arow) nogil:
    cdef int t, i, e, k
    cdef double val, aval, xi
    for k in range(pd.maxdeg + 1):
        row[k] = 0.0
        arow[k] = 0.0
    for t in range(pd.nterms):
        val = pd.fcoefs[t]
        aval = pd.acoefs[t]
        for i in range(n - 1):
            e = pd.exps[t * n + i]
            xi = <double> x[i]
            while e:
                val *= xi
                aval *= fabs(xi)
                e -= 1
        k = pd.exps[t * n + n - 1]
        row[k] += val
        arow[k] += aval


cdef long long _horner_int(long long *row, int maxdeg, long long t) nogil:
    cdef long long v = row[maxdeg]
    cdef int k
    for k in range(maxdeg - 1, -1, -1):
        v = v * t + row[k]
    return v


cdef double _horner_float(double *row, int maxdeg, double t) nogil:
    cdef double v = row[maxdeg]
    cdef int k
    for k in range(maxdeg - 1, -1, -1):
        v = v * t + row[k]
    return v


cdef class _Odometer:
    """Iterates coordinates first..last, each over its own [lo, hi]."""
    cdef long long *x
    cdef long long *lo
    cdef long long *hi
    cdef int first, last
    cdef bint exhausted

    def __cinit__(self, int size):
        self.x = NULL
        self.lo = <long long *> malloc(size * sizeof(long long))
        self.hi = <long long *> malloc(size * sizeof(long long))

    def __dealloc__(self):
        free(self.lo)
        free(self.hi)

    cdef void start(self, long long *x, int first, int last) nogil:
        cdef int i
        self.x = x
        self.first = first
        self.last = last
        self.exhausted = False
        for i in range(first, last + 1):
            x[i] = self.lo[i]

    cdef bint advance(self) nogil:
        # returns False when the space is exhausted
        cdef int i = self.last
        while i >= self.first:
            self.x[i] += 1
            if self.x[i] <= self.hi[i]:
                return True
            self.x[i] = self.lo[i]
            i -= 1
        self.exhausted = True
        return False


cdef tuple _point(long long *x, int n):
    cdef int i
    return tuple([x[i] for i in range(n)])


def scan_inequality(int n, long long bound, list sprimes, list exps, list coefs,
                    object den_obj, double c_f, double lam_f, bint use_int64,
                    long long max_out):
    """Candidate scan for 0 < prod_{v in S} |F(x)|_v <= c * H_S^lam over
    canonical points.  Float mode requires sprimes == [].

    Returns (points_scanned, budget_hit, candidates).
    """
    cdef PolyData pd = _make_poly(exps, coefs, den_obj, n, not use_int64)
    cdef long long *x = <long long *> malloc(n * sizeof(long long))
    cdef long long *row = <long long *> malloc((pd.maxdeg + 1) * sizeof(long long))
    cdef double *frow = <double *> malloc((pd.maxdeg + 1) * sizeof(double))
    cdef double *arow = <double *> malloc((pd.maxdeg + 1) * sizeof(double))
    cdef int np = len(sprimes)
    cdef long long *primes = <long long *> malloc((np or 1) * sizeof(long long))
    cdef int *pref_div = <int *> malloc((np or 1) * sizeof(int))
    cdef int *dord = <int *> malloc((np or 1) * sizeof(int))
    cdef _Odometer odo = _Odometer(n)
    cdef double *thr_table = NULL
    cdef long long table_size = 0

    cdef long long scanned = 0
    cdef bint budget_hit = False
    out = []

    cdef int lead, i, k
    cdef long long t, t_lo, v, height, pmax, den = pd.den
    cdef double den_f = <double> float(den_obj)
    cdef double lf, thr, val, aval, err
    cdef int e
    cdef bint skip, prefix_zero

    try:
        for i in range(np):
            primes[i] = sprimes[i]
            dord[i] = _ord(den, primes[i]) if den % primes[i] == 0 else 0
        if bound <= 4_000_000:
            table_size = bound + 1
            thr_table = <double *> malloc(table_size * sizeof(double))
            for t in range(table_size):
                thr_table[t] = c_f * pow(<double> t, lam_f) if t else 0.0

        for lead in range(n):
            for i in range(lead):
                x[i] = 0
            t_lo = 1 if lead == n - 1 else -bound
            # odometer over positions lead..n-2 (empty when lead == n-1)
            for i in range(lead, n - 1):
                odo.lo[i] = 1 if i == lead else -bound
                odo.hi[i] = bound
            odo.start(x, lead, n - 2)
            while True:
                if lead < n - 1 and odo.exhausted:
                    break
                # prefix facts
                pmax = 0
                for i in range(n - 1):
                    if x[i] > pmax:
                        pmax = x[i]
                    elif -x[i] > pmax:
                        pmax = -x[i]
                for i in range(np):
                    pref_div[i] = 1
                    for k in range(n - 1):
                        if x[k] % primes[i] != 0:
                            pref_div[i] = 0
                            break
                if use_int64:
                    _rows_int(&pd, x, n, row)
                else:
                    _rows_float(&pd, x, n, frow, arow)

                for t in range(t_lo, bound + 1):
                    skip = False
                    for i in range(np):
                        if pref_div[i] and t % primes[i] == 0:
                            skip = True
                            break
                    if skip:
                        continue
                    scanned += 1
                    height = pmax if pmax > t else t
                    if -t > height:
                        height = -t
                    if thr_table != NULL:
                        thr = thr_table[height]
                    else:
                        thr = c_f * pow(<double> height, lam_f)
                    if use_int64:
                        v = _horner_int(row, pd.maxdeg, t)
                        if v == 0:
                            continue
                        lf = fabs(<double> v) / den_f
                        for i in range(np):
                            e = _ord(v, primes[i])
                            for k in range(dord[i] - e):
                                lf *= <double> primes[i]
                            for k in range(e - dord[i]):
                                lf /= <double> primes[i]
                        if lf <= thr * (1.0 + 1e-9) + 1e-300:
                            x[n - 1] = t
                            out.append(_point(x, n))
                            if len(out) > max_out:
                                budget_hit = True
                                return scanned, budget_hit, out
                    else:
                        val = _horner_float(frow, pd.maxdeg, <double> t)
                        aval = _horner_float(arow, pd.maxdeg, fabs(<double> t))
                        err = 1e-12 * aval + 1e-300
                        if fabs(val) / den_f <= thr * (1.0 + 1e-9) + err:
                            x[n - 1] = t
                            out.append(_point(x, n))
                            if len(out) > max_out:
                                budget_hit = True
                                return scanned, budget_hit, out
                if lead == n - 1 or not odo.advance():
                    break
        return scanned, budget_hit, out
    finally:
        _free_poly(&pd)
        free(x)
        free(row)
        free(frow)
        free(arow)
        free(primes)
        free(pref_div)
        free(dord)
        if thr_table != NULL:
            free(thr_table)


def scan_equation(int n, long long bound, list d_exps, list d_coefs,
                  object d_den, list f_exps, list f_coefs, object f_den,
                  bint use_int64, long long max_out):
    """Scan the full box max|x_i| <= bound for D(x) = 0 with F(x) != 0,
    where D = F - rhs (integer-scaled).  In float mode returns candidates
    with |D(x)| inside the error margin; int64 mode returns exact hits.

    Returns (points_scanned, budget_hit, candidates).
    """
    cdef PolyData dd = _make_poly(d_exps, d_coefs, d_den, n, not use_int64)
    cdef PolyData fd = _make_poly(f_exps, f_coefs, f_den, n, not use_int64)
    cdef long long *x = <long long *> malloc(n * sizeof(long long))
    cdef long long *drow = <long long *> malloc((dd.maxdeg + 1) * sizeof(long long))
    cdef long long *frow = <long long *> malloc((fd.maxdeg + 1) * sizeof(long long))
    cdef double *dfrow = <double *> malloc((dd.maxdeg + 1) * sizeof(double))
    cdef double *darow = <double *> malloc((dd.maxdeg + 1) * sizeof(double))
    cdef _Odometer odo = _Odometer(n if n > 1 else 1)

    cdef long long scanned = 0
    cdef bint budget_hit = False
    out = []

    cdef int i
    cdef long long t, vd, vf
    cdef double val, aval
    cdef bint prefix_zero

    try:
        for i in range(n - 1):
            odo.lo[i] = -bound
            odo.hi[i] = bound
        odo.start(x, 0, n - 2)
        while True:
            if n > 1 and odo.exhausted:
                break
            prefix_zero = True
            for i in range(n - 1):
                if x[i] != 0:
                    prefix_zero = False
                    break
            if use_int64:
                _rows_int(&dd, x, n, drow)
                _rows_int(&fd, x, n, frow)
            else:
                _rows_float(&dd, x, n, dfrow, darow)
            for t in range(-bound, bound + 1):
                if prefix_zero and t == 0:
                    continue
                scanned += 1
                if use_int64:
                    vd = _horner_int(drow, dd.maxdeg, t)
                    if vd != 0:
                        continue
                    vf = _horner_int(frow, fd.maxdeg, t)
                    if vf == 0:
                        continue
                    x[n - 1] = t
                    out.append(_point(x, n))
                else:
                    val = _horner_float(dfrow, dd.maxdeg, <double> t)
                    aval = _horner_float(darow, dd.maxdeg, fabs(<double> t))
                    if fabs(val) > 1e-12 * aval + 1e-300:
                        continue
                    x[n - 1] = t
                    out.append(_point(x, n))
                if len(out) > max_out:
                    budget_hit = True
                    return scanned, budget_hit, out
            if n == 1 or not odo.advance():
                break
        return scanned, budget_hit, out
    finally:
        _free_poly(&dd)
        _free_poly(&fd)
        free(x)
        free(drow)
        free(frow)
        free(dfrow)
        free(darow)


def scan_audit(int n, long long bound, list sprimes,
               list fam_exps, list fam_coefs, list fam_dens, list fam_degs,
               list fam_consts, list v_exps, list v_coefs, list v_dens,
               double rho_f, long long max_out):
    """Candidate scan for the Weil-sum audit over canonical points
    (int64 mode only; the wrapper guarantees the overflow bound).

    Per audited point the float left-hand side is
        sum_j (deg_j * log H_inf + K_j + sum_p ord_p(value_j) * log p
               - log |value_j|) / deg_j
    with K_j = log||Q_j||_inf + log den_j + sum_p (log||Q_j||_p
               - ord_p(den_j) * log p) precomputed by the caller, and the
    right-hand side rho * (log H_inf - log content).  Points with
    lhs >= rhs - margin are returned for exact classification; the margin
    dwarfs the float error, so no violator is missed.

    Returns (points_checked, budget_hit, candidates).
    """
    cdef int nfam = len(fam_dens)
    cdef int nv = len(v_dens)
    cdef PolyData *fam = <PolyData *> malloc(nfam * sizeof(PolyData))
    cdef PolyData *vgen = <PolyData *> malloc((nv or 1) * sizeof(PolyData))
    cdef double *consts = <double *> malloc(nfam * sizeof(double))
    cdef int *degs = <int *> malloc(nfam * sizeof(int))
    cdef long long *x = <long long *> malloc(n * sizeof(long long))
    cdef int np = len(sprimes)
    cdef long long *primes = <long long *> malloc((np or 1) * sizeof(long long))
    cdef double *logp = <double *> malloc((np or 1) * sizeof(double))
    cdef int *pref_div = <int *> malloc((np or 1) * sizeof(int))
    cdef _Odometer odo = _Odometer(n)

    cdef int maxdeg = 0
    cdef int j, i, k
    for j in range(nfam):
        fam[j] = _make_poly(fam_exps[j], fam_coefs[j], fam_dens[j], n, False)
        consts[j] = fam_consts[j]
        degs[j] = fam_degs[j]
        if fam[j].maxdeg > maxdeg:
            maxdeg = fam[j].maxdeg
    for j in range(nv):
        vgen[j] = _make_poly(v_exps[j], v_coefs[j], v_dens[j], n, False)
        if vgen[j].maxdeg > maxdeg:
            maxdeg = vgen[j].maxdeg
    cdef long long *rows = <long long *> malloc(
        (nfam + nv) * (maxdeg + 1) * sizeof(long long))

    cdef long long checked = 0
    cdef bint budget_hit = False
    out = []

    cdef int lead
    cdef long long t, t_lo, v, pmax, height, g
    cdef double lhs, rhs, hfloat, margin
    cdef bint skip

    try:
        for i in range(np):
            primes[i] = sprimes[i]
            logp[i] = log(<double> primes[i])

        for lead in range(n):
            for i in range(lead):
                x[i] = 0
            t_lo = 1 if lead == n - 1 else -bound
            for i in range(lead, n - 1):
                odo.lo[i] = 1 if i == lead else -bound
                odo.hi[i] = bound
            odo.start(x, lead, n - 2)
            while True:
                if lead < n - 1 and odo.exhausted:
                    break
                pmax = 0
                for i in range(n - 1):
                    if x[i] > pmax:
                        pmax = x[i]
                    elif -x[i] > pmax:
                        pmax = -x[i]
                for i in range(np):
                    pref_div[i] = 1
                    for k in range(n - 1):
                        if x[k] % primes[i] != 0:
                            pref_div[i] = 0
                            break
                for j in range(nv):
                    _rows_int(&vgen[j], x, n, &rows[(nfam + j) * (maxdeg + 1)])
                for j in range(nfam):
                    _rows_int(&fam[j], x, n, &rows[j * (maxdeg + 1)])

                for t in range(t_lo, bound + 1):
                    skip = False
                    for i in range(np):
                        if pref_div[i] and t % primes[i] == 0:
                            skip = True
                            break
                    if skip:
                        continue
                    # on the variety?
                    for j in range(nv):
                        if _horner_int(&rows[(nfam + j) * (maxdeg + 1)],
                                       vgen[j].maxdeg, t) != 0:
                            skip = True
                            break
                    if skip:
                        continue
                    height = pmax if pmax > t else t
                    if -t > height:
                        height = -t
                    lhs = 0.0
                    for j in range(nfam):
                        v = _horner_int(&rows[j * (maxdeg + 1)], fam[j].maxdeg, t)
                        if v == 0:
                            skip = True
                            break
                        lhs += (degs[j] * log(<double> height) + consts[j]
                                - log(fabs(<double> v))) / degs[j]
                        for i in range(np):
                            lhs += _ord(v, primes[i]) * logp[i] / degs[j]
                    if skip:
                        continue
                    checked += 1
                    g = 0
                    for i in range(n - 1):
                        g = _gcd(g, x[i])
                    g = _gcd(g, t)
                    hfloat = log(<double> height) - log(<double> g)
                    rhs = rho_f * hfloat
                    margin = 1e-6 * (1.0 + fabs(lhs) + fabs(rhs))
                    if lhs >= rhs - margin:
                        x[n - 1] = t
                        out.append(_point(x, n))
                        if len(out) > max_out:
                            budget_hit = True
                            return checked, budget_hit, out
                if lead == n - 1 or not odo.advance():
                    break
        return checked, budget_hit, out
    finally:
        for j in range(nfam):
            _free_poly(&fam[j])
        for j in range(nv):
            _free_poly(&vgen[j])
        free(fam)
        free(vgen)
        free(consts)
        free(degs)
        free(x)
        free(primes)
        free(logp)
        free(pref_div)
        free(rows)
