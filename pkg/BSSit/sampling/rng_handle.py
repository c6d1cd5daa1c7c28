import numpy as np
from scipy.special import ndtri


class RngHandle(object):
    """
    A :class:`RngHandle` is a counter-based random stream.

    Draws come from a Philox generator keyed by (`seed`, `stream`) and addressed by a counter.
    Each element of a call is assigned one *position* of the stream,
    and the uniforms used by the element in the r-th round of a rejection sampler are read at counter
    (position, r). Hence sampling n elements in one call gives the same values as n calls of one element,
    and two handles with identical (seed, stream) produce identical sequences on every platform.

    Attributes:
        seed (int): 64-bit seed.
        stream (int): 64-bit stream identifier.
        position (int): index of the next unused position of the stream.

    Example:
        >>> rng = RngHandle(seed=42)
        >>> u = rng.uniform(5)
        >>> child = rng.spawn(stream=1)

    """
    # Number of uniforms available per position and round
    lanes = 4

    # Maximal number of rejection rounds before giving up
    max_rounds = 10000

    def __init__(self, seed=0, stream=0, position=0):
        """

        Args:
            seed (int): 64-bit seed.
            stream (int): 64-bit stream identifier.
            position (int): starting position in the stream.

        """
        self.seed = int(seed) % 2 ** 64
        self.stream = int(stream) % 2 ** 64
        self.position = int(position)

    def spawn(self, stream):
        """
        Create an independent handle sharing the seed of self.

        Args:
            stream (int): the stream identifier of the new handle.

        Returns:
            rng (RngHandle): a fresh handle positioned at 0.

        """
        return RngHandle(seed=self.seed, stream=stream)

    def reserve(self, n):
        """
        Reserve `n` consecutive positions.

        Returns:
            start (int): the first reserved position.

        """
        assert n >= 0
        start = self.position
        self.position += int(n)
        return start

    def block(self, start, n, round_index=0):
        """
        Read the uniforms of positions [start, start + n) at a given round.

        Args:
            start (int): first position.
            n (int): number of positions.
            round_index (int): rejection round.

        Returns:
            uniforms (ndarray): array of shape (n, 4) with values in the open interval (0, 1).

        """
        if n == 0:
            return np.empty((0, self.lanes))
        bit_generator = np.random.Philox(counter=np.array([start, round_index, 0, 0], dtype=np.uint64),
                                         key=np.array([self.seed, self.stream], dtype=np.uint64))
        raw = bit_generator.random_raw(self.lanes * n).reshape(n, self.lanes)

        # 53 random bits, shifted by half a unit to exclude 0 and 1
        return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2. ** -53

    def uniform(self, n):
        """
        Draw `n` i.i.d. uniforms on (0, 1).

        """
        start = self.reserve(n)
        return self.block(start, n)[:, 0]

    def uniform_lanes(self, n):
        """
        Draw the 4 uniforms of `n` fresh positions.

        Returns:
            uniforms (ndarray): array of shape (n, 4).

        """
        start = self.reserve(n)
        return self.block(start, n)

    def standard_normal(self, n):
        """
        Draw `n` i.i.d. standard normal values (inverse transform of the uniforms).

        """
        return ndtri(self.uniform(n))

    def exponential(self, n):
        """
        Draw `n` i.i.d. standard exponential values.

        """
        return -np.log(self.uniform(n))

    def rejection_sample(self, n, propose):
        """
        Run a vectorised rejection sampler on `n` elements.

        Args:
            n (int): number of elements.
            propose (callable): `propose(indices, uniforms)` receives the indices of the pending elements
                                and an array of shape (len(indices), 4) of uniforms,
                                and returns a boolean acceptance mask and the proposed values.

        Returns:
            values (ndarray): the accepted values, one per element.

        Raises:
            RuntimeError: if some element is still rejected after `max_rounds` rounds.

        """
        start = self.reserve(n)
        values = np.empty(n)
        pending = np.arange(n)
        round_index = 0

        while pending.size > 0:
            if round_index >= self.max_rounds:
                raise RuntimeError("Rejection sampler did not terminate after {} rounds"
                                   " ({} element(s) pending)".format(self.max_rounds, pending.size))

            # Read only the span covering the pending elements
            first = pending[0]
            uniforms = self.block(start + first, pending[-1] + 1 - first, round_index)[pending - first]

            accepted, proposals = propose(pending, uniforms)
            values[pending[accepted]] = proposals[accepted]
            pending = pending[~accepted]
            round_index += 1

        return values

    def to_dict(self):
        """

        Returns:
            state (dict): seed, stream and position of self.

        """
        return {"seed": self.seed, "stream": self.stream, "position": self.position}
