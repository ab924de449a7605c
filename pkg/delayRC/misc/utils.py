import hashlib
import numpy as np


def make_rng(seed):
    """Counter-based generator used for every random draw in the package.
    """
    return np.random.Generator(np.random.Philox(int(seed)))

def derive_seed(master, label, *indices):
    """Stable 64-bit child seed from (master seed, component label, indices).
    """
    key = "|".join([str(int(master)), str(label)] + [str(int(i)) for i in indices])
    return int.from_bytes(hashlib.sha256(key.encode("utf-8")).digest()[:8], "big")

def sample_uniform(rng, low, high, size=None):
    return rng.uniform(low, high, size=size)

def sample_discrete_gaussian(rng, mean, sigma, low, high, size=None):
    """Truncated discrete Gaussian on the integers [low, high], renormalized.
    """
    support = np.arange(low, high + 1)
    p = np.exp(-0.5 * ((support - mean) / sigma)**2)
    p = p / np.sum(p)
    return rng.choice(support, size=size, p=p)

def hermite_midpoint(y0, y1, d0, d1, h):
    """Cubic Hermite interpolant on [t, t+h] evaluated at t + h/2.
    """
    return 0.5 * (y0 + y1) + 0.125 * h * (d0 - d1)

def central_difference(f, t, eps=1e-6):
    return (f(t + eps) - f(t - eps)) / (2. * eps)

def file_digest(path):
    h = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(1 << 20), b''):
            h.update(chunk)
    return h.hexdigest()

def elapsed_hms(elapsed):
    m, s = divmod(elapsed, 60)
    h, m = divmod(m, 60)
    return h, m, s

def pairwise_max_distance(states):
    """states is trials x m; returns the largest Euclidean distance between any two rows.
    """
    diff = states[:, np.newaxis, :] - states[np.newaxis, :, :]
    return np.max(np.sqrt(np.sum(diff**2, axis=-1)))
