# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled walk kernel; same contract and bit consumption as _walk_py."""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport realloc, free

cdef enum:
    P_ZERO = 0
    P_ONE = 1
    P_MID = 2

REJECT = -1
NEED_GROW = -1



cdef class BitSource:
    """Deterministic bit stream: SplitMix64 words, each read MSB first."""

    cdef uint64_t _state
    cdef uint64_t _word
    cdef int _left
    cdef list _script

    def __init__(self, seed=0):
        if seed < 0 or seed > 0xFFFFFFFFFFFFFFFF:
            raise ValueError("seed must fit in 64 unsigned bits")
        self._state = <uint64_t>seed
        self._word = 0
        self._left = 0
        self._script = None

    @classmethod
    def from_words(cls, words, seed=0):
        cdef BitSource src = cls(seed)
        src._script = [int(w) & 0xFFFFFFFFFFFFFFFF for w in reversed(list(words))]
        return src

    @property
    def seed_state(self):
        return self._state

    cdef inline uint64_t _next_word(self):
        cdef uint64_t z
        if self._script:
            return <uint64_t>self._script.pop()
        self._state += 0x9E3779B97F4A7C15ULL
        z = self._state
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
        return z ^ (z >> 31)

    cdef inline int _next_bit(self):
        if self._left == 0:
            self._word = self._next_word()
            self._left = 64
        self._left -= 1
        return <int>((self._word >> self._left) & 1)

    def next_word(self):
        return self._next_word()

    def next_bit(self):
        return self._next_bit()

    def split(self):
        return BitSource(self._next_word())

    def getstate(self):
        return (self._state, self._word, self._left)

    def setstate(self, st):
        self._state, self._word, self._left = st


def prob_prefix(num, den):
    if num == 0:
        return P_ZERO, 0
    if num == den:
        return P_ONE, 0
    return P_MID, (num << 64) // den


cdef int _tail(BitSource src, object num, object den, object p64) except -2:
    # the 64-bit prefix tied; continue on the exact remainder
    cdef int d, r
    rem = (num << 64) - p64 * den
    while True:
        rem <<= 1
        if rem >= den:
            rem -= den
            d = 1
        else:
            d = 0
        r = src._next_bit()
        if r != d:
            return 1 if r < d else 0


cdef inline int _draw_prefix(BitSource src, uint64_t p64):
    # -1 means all 64 prefix bits tied
    cdef int i, r, d
    i = 63
    while i >= 0:
        r = src._next_bit()
        d = <int>((p64 >> i) & 1)
        if r != d:
            return 1 if r < d else 0
        i -= 1
    return -1


def draw(BitSource src, int kind, p64, num, den):
    cdef int hit
    if kind == P_ZERO:
        return 0
    if kind == P_ONE:
        return 1
    hit = _draw_prefix(src, <uint64_t>p64)
    if hit < 0:
        hit = _tail(src, num, den, p64)
    return hit


cdef class WalkCore:
    """Chain walker over resolved table rows (see _walk_py.WalkCore)."""

    cdef public BitSource src
    cdef public int64_t level
    cdef public int last_bit
    cdef public int64_t max_level
    cdef public int64_t steps
    cdef int64_t _rows
    cdef int64_t _cap
    cdef int64_t *_d0
    cdef int64_t *_d1
    cdef int *_c
    cdef int *_kind
    cdef uint64_t *_p64
    cdef list _num
    cdef list _den

    def __cinit__(self, seed):
        self._cap = 0
        self._rows = 0
        self._d0 = NULL
        self._d1 = NULL
        self._c = NULL
        self._kind = NULL
        self._p64 = NULL

    def __init__(self, seed):
        self.src = BitSource(seed)
        self.level = 0
        self.last_bit = 1
        self.max_level = 0
        self.steps = 0
        self._num = []
        self._den = []
        self._grow(64)

    def __dealloc__(self):
        free(self._d0)
        free(self._d1)
        free(self._c)
        free(self._kind)
        free(self._p64)

    cdef _grow(self, int64_t cap):
        cdef void *p
        p = realloc(self._d0, cap * sizeof(int64_t))
        if p == NULL:
            raise MemoryError()
        self._d0 = <int64_t *>p
        p = realloc(self._d1, cap * sizeof(int64_t))
        if p == NULL:
            raise MemoryError()
        self._d1 = <int64_t *>p
        p = realloc(self._c, cap * sizeof(int))
        if p == NULL:
            raise MemoryError()
        self._c = <int *>p
        p = realloc(self._kind, cap * sizeof(int))
        if p == NULL:
            raise MemoryError()
        self._kind = <int *>p
        p = realloc(self._p64, cap * sizeof(uint64_t))
        if p == NULL:
            raise MemoryError()
        self._p64 = <uint64_t *>p
        self._cap = cap

    @property
    def rows(self):
        return self._rows

    def push_row(self, int64_t delta0, int64_t delta1, int c, num, den):
        kind, p64 = prob_prefix(num, den)
        if self._rows == self._cap:
            self._grow(2 * self._cap)
        self._d0[self._rows] = delta0
        self._d1[self._rows] = delta1
        self._c[self._rows] = c
        self._kind[self._rows] = kind
        self._p64[self._rows] = <uint64_t>p64
        self._num.append(num)
        self._den.append(den)
        self._rows += 1

    cdef inline int _step(self) except -2:
        cdef int64_t l = self.level
        cdef int64_t nxt
        cdef int hit, bit
        if l >= self._rows:
            return -1
        if self._kind[l] == P_MID:
            hit = _draw_prefix(self.src, self._p64[l])
            if hit < 0:
                hit = _tail(self.src, self._num[l], self._den[l], self._p64[l])
        else:
            hit = self._kind[l] == P_ONE
        if self.last_bit == self._c[l]:
            bit = 1 - hit
            nxt = self._d1[l] if bit else self._d0[l]
        else:
            bit = hit
            nxt = self._d0[l] if bit else self._d1[l]
        if nxt < 0:
            raise RuntimeError("chain stepped into REJECT at level %d" % l)
        self.level = nxt
        self.last_bit = bit
        if nxt > self.max_level:
            self.max_level = nxt
        self.steps += 1
        return bit

    def step(self):
        return self._step()

    def run(self, int64_t nsteps, bytearray out=None, int64_t offset=0):
        cdef int64_t done = 0
        cdef int bit
        cdef unsigned char[::1] buf
        if out is not None:
            buf = out
        while done < nsteps:
            bit = self._step()
            if bit < 0:
                break
            if out is not None:
                buf[offset + done] = 48 + bit
            done += 1
        return done
