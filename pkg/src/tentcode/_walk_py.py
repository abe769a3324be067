"""Pure-Python walk kernel.

Mirrors ``_walk.pyx`` statement for statement; both must consume the same
random bits in the same order so that a seed means the same thing whichever
backend is loaded.
"""

MASK64 = (1 << 64) - 1
REJECT = -1

# probability kinds, see prob_prefix()
P_ZERO = 0
P_ONE = 1
P_MID = 2

NEED_GROW = -1


def splitmix64(state):
    """Advance a SplitMix64 state; returns (new_state, output_word)."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


class BitSource:
    """Deterministic bit stream: SplitMix64 words, each read MSB first."""

    __slots__ = ("_state", "_word", "_left", "_script")

    def __init__(self, seed=0):
        if seed < 0 or seed > MASK64:
            raise ValueError("seed must fit in 64 unsigned bits")
        self._state = seed
        self._word = 0
        self._left = 0
        self._script = None

    @classmethod
    def from_words(cls, words, seed=0):
        """Source that replays ``words`` before falling back to the PRNG."""
        src = cls(seed)
        src._script = [w & MASK64 for w in reversed(list(words))]
        return src

    @property
    def seed_state(self):
        return self._state

    def next_word(self):
        if self._script:
            return self._script.pop()
        self._state, z = splitmix64(self._state)
        return z

    def next_bit(self):
        if self._left == 0:
            self._word = self.next_word()
            self._left = 64
        self._left -= 1
        return (self._word >> self._left) & 1

    def split(self):
        """Child source seeded from this stream's next word."""
        return BitSource(self.next_word())

    def getstate(self):
        return (self._state, self._word, self._left)

    def setstate(self, st):
        self._state, self._word, self._left = st


def prob_prefix(num, den):
    """Classify ``num/den`` in [0, 1] and return (kind, floor(p * 2**64))."""
    if num == 0:
        return P_ZERO, 0
    if num == den:
        return P_ONE, 0
    return P_MID, (num << 64) // den


def draw(src, kind, p64, num, den):
    """Return 1 with probability exactly num/den.

    The source's bits are compared one at a time against the binary
    expansion of p; the first disagreement settles the draw.
    """
    if kind == P_ZERO:
        return 0
    if kind == P_ONE:
        return 1
    i = 63
    while i >= 0:
        r = src.next_bit()
        d = (p64 >> i) & 1
        if r != d:
            return 1 if r < d else 0
        i -= 1
    rem = (num << 64) - p64 * den
    while True:
        rem <<= 1
        if rem >= den:
            rem -= den
            d = 1
        else:
            d = 0
        r = src.next_bit()
        if r != d:
            return 1 if r < d else 0


class WalkCore:
    """Chain walker over resolved table rows.

    Rows are pushed in level order by the owner once the segment table has
    resolved them; stepping from a level with no row returns ``NEED_GROW``
    and leaves the state untouched.
    """

    def __init__(self, seed):
        self.src = BitSource(seed)
        self.level = 0
        self.last_bit = 1
        self.max_level = 0
        self.steps = 0
        self._d0 = []
        self._d1 = []
        self._c = []
        self._kind = []
        self._p64 = []
        self._num = []
        self._den = []

    @property
    def rows(self):
        return len(self._c)

    def push_row(self, delta0, delta1, c, num, den):
        kind, p64 = prob_prefix(num, den)
        self._d0.append(delta0)
        self._d1.append(delta1)
        self._c.append(c)
        self._kind.append(kind)
        self._p64.append(p64)
        self._num.append(num)
        self._den.append(den)

    def step(self):
        l = self.level
        if l >= len(self._c):
            return NEED_GROW
        hit = draw(self.src, self._kind[l], self._p64[l], self._num[l], self._den[l])
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

    def run(self, nsteps, out=None, offset=0):
        """Take up to ``nsteps`` steps; stop early when a row is missing.

        With ``out`` (a bytearray) the bits are written as ASCII from
        ``offset``. Returns the number of steps taken.
        """
        done = 0
        while done < nsteps:
            bit = self.step()
            if bit < 0:
                break
            if out is not None:
                out[offset + done] = 48 + bit
            done += 1
        return done
