# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled predicate kernel; same contract as ``_kernel_py``."""

from libc.stdint cimport int64_t, int32_t, uint32_t
from libc.stdlib cimport malloc, free

cdef enum:
    PUSH_INT = 0
    PUSH_BOOL = 1
    PUSH_UNIT = 2
    LOAD = 3
    BINOP = 4

cdef enum:
    T_INT = 0
    T_BOOL = 1
    T_UNIT = 2
    T_STUCK = 3

cdef enum:
    EQ = 0
    NE = 1
    LT = 2
    LE = 3
    GE = 4
    GT = 5
    AND = 6
    OR = 7
    ADD = 8
    SUB = 9
    MUL = 10
    DIV = 11
    MOD = 12


cdef inline int64_t wrap(int64_t x) nogil:
    # truncation to an unsigned 32-bit value is reduction mod 2**32
    return <int32_t>(<uint32_t>x)


cdef inline int apply(int op, int ta, int64_t a, int tb, int64_t b, int64_t* out) nogil:
    cdef int64_t q, r
    cdef int same
    if op == EQ or op == NE:
        same = 1 if (ta == tb and a == b) else 0
        out[0] = same if op == EQ else 1 - same
        return T_BOOL
    if op == AND or op == OR:
        if ta != T_BOOL or tb != T_BOOL:
            return T_STUCK
        if op == AND:
            out[0] = 1 if (a != 0 and b != 0) else 0
        else:
            out[0] = 1 if (a != 0 or b != 0) else 0
        return T_BOOL
    if ta != T_INT or tb != T_INT:
        return T_STUCK
    if op == ADD:
        out[0] = wrap(a + b)
    elif op == SUB:
        out[0] = wrap(a - b)
    elif op == MUL:
        out[0] = wrap(a * b)
    elif op == DIV or op == MOD:
        if b == 0:
            return T_STUCK
        # C division truncates toward zero; operands fit in 32 bits so no overflow here
        q = a / b
        r = a % b
        out[0] = wrap(q) if op == DIV else r
    elif op == LT:
        out[0] = a < b
        return T_BOOL
    elif op == LE:
        out[0] = a <= b
        return T_BOOL
    elif op == GE:
        out[0] = a >= b
        return T_BOOL
    else:
        out[0] = a > b
        return T_BOOL
    return T_INT


cdef int run(const int64_t* code, Py_ssize_t n, const int64_t* env,
             int* tags, int64_t* vals, int64_t* result) nogil:
    cdef Py_ssize_t pc = 0, sp = 0
    cdef int64_t op, arg, v
    cdef int t
    while pc < n:
        op = code[pc]
        arg = code[pc + 1]
        pc += 2
        if op == PUSH_INT:
            tags[sp] = T_INT
            vals[sp] = arg
            sp += 1
        elif op == PUSH_BOOL:
            tags[sp] = T_BOOL
            vals[sp] = arg
            sp += 1
        elif op == PUSH_UNIT:
            tags[sp] = T_UNIT
            vals[sp] = 0
            sp += 1
        elif op == LOAD:
            tags[sp] = T_INT
            vals[sp] = env[arg]
            sp += 1
        else:
            sp -= 2
            t = apply(<int>arg, tags[sp], vals[sp], tags[sp + 1], vals[sp + 1], &v)
            if t == T_STUCK:
                return T_STUCK
            tags[sp] = t
            vals[sp] = v
            sp += 1
    result[0] = vals[sp - 1]
    return tags[sp - 1]


cdef class _Program:
    cdef int64_t* code
    cdef readonly Py_ssize_t n

    def __cinit__(self, code):
        self.n = len(code)
        self.code = <int64_t*>malloc(max(self.n, 1) * sizeof(int64_t))
        if self.code == NULL:
            raise MemoryError()
        for i in range(self.n):
            self.code[i] = code[i]

    def __dealloc__(self):
        free(self.code)


def run_code(code, env):
    cdef _Program prog = _Program(code)
    cdef Py_ssize_t k = len(env), i
    cdef int64_t* e = <int64_t*>malloc(max(k, 1) * sizeof(int64_t))
    cdef int* tags = <int*>malloc(max(prog.n, 1) * sizeof(int))
    cdef int64_t* vals = <int64_t*>malloc(max(prog.n, 1) * sizeof(int64_t))
    cdef int64_t res = 0
    cdef int t
    try:
        for i in range(k):
            e[i] = env[i]
        t = run(prog.code, prog.n, e, tags, vals, &res)
        return (t, res if t != T_STUCK else 0)
    finally:
        free(e)
        free(tags)
        free(vals)


cdef bint _all_true(list progs, const int64_t* env, int* tags, int64_t* vals):
    cdef _Program p
    cdef int64_t res
    for p in progs:
        if run(p.code, p.n, env, tags, vals, &res) != T_BOOL or res != 1:
            return False
    return True


def _scan(facts, goal, int k, int64_t lo, int64_t hi, bint count):
    cdef list progs = [_Program(f) for f in facts]
    cdef _Program g = _Program(goal) if goal is not None else None
    cdef Py_ssize_t longest = max([p.n for p in progs] + [g.n if g is not None else 1, 1])
    cdef int64_t* env = <int64_t*>malloc(max(k, 1) * sizeof(int64_t))
    cdef int* tags = <int*>malloc(longest * sizeof(int))
    cdef int64_t* vals = <int64_t*>malloc(longest * sizeof(int64_t))
    cdef int64_t res
    cdef int i
    cdef long models = 0
    if hi < lo:
        free(env); free(tags); free(vals)
        return 0 if count else None
    try:
        for i in range(k):
            env[i] = lo
        while True:
            if _all_true(progs, env, tags, vals):
                if count:
                    models += 1
                elif run(g.code, g.n, env, tags, vals, &res) != T_BOOL or res != 1:
                    return tuple(env[i] for i in range(k))
            # odometer increment, last slot fastest
            i = k - 1
            while i >= 0:
                if env[i] < hi:
                    env[i] += 1
                    break
                env[i] = lo
                i -= 1
            if i < 0:
                break
        return models if count else None
    finally:
        free(env)
        free(tags)
        free(vals)


def find_countermodel(facts, goal, int k, int64_t lo, int64_t hi):
    """First assignment in ``[lo, hi]^k`` satisfying every fact but not the goal."""
    return _scan(facts, goal, k, lo, hi, False)


def count_models(facts, int k, int64_t lo, int64_t hi):
    return _scan(facts, None, k, lo, hi, True)
