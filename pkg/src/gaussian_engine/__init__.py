from .engine_error import EmbeddingError, FactorizationError, GaussianEngineError
from .fgn import FgnSample, rho_fgn, sample_fgn, sample_fgn_batch, sample_stationary_gaussian
from .rng_stream import RngStream, derive_stream
from .sheet import sample_fgn_sheet
