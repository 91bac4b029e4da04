"""Exception hierarchy for the codec."""


class CodecError(Exception):
    """Base class for all codec errors."""


# --- PLY / cloud input ---

class MalformedHeader(CodecError):
    """PLY header is missing the magic line or required properties."""


class TruncatedBody(CodecError):
    """PLY body holds fewer vertices than the header declares."""


class UnsupportedFormat(CodecError):
    """PLY format we do not read (big-endian, missing color, ...)."""


class DepthOutOfRange(CodecError):
    """Octree depth outside [1, 21]."""


# --- Morton / schedule ---

class CoordinateOutOfRange(CodecError):
    """Grid coordinate outside [0, 2^L)."""


class CodeOutOfRange(CodecError):
    """Morton code outside [0, 2^(3L))."""


class ScheduleMismatch(CodecError):
    """Merge schedule does not match the cloud or coefficient set."""


# --- ordering ---

class DuplicateTraversalIndex(CodecError):
    """Coefficient metadata contains a repeated traversal index."""


class LengthMismatch(CodecError):
    """Permutation and value list lengths differ."""


# --- entropy coding ---

class TruncatedStream(CodecError):
    """Bitstream ended before the expected symbols were decoded."""


class MalformedEscape(CodecError):
    """Escape record decodes to a value a valid encoder never escapes."""


# --- container ---

class GeometryMismatch(CodecError):
    """Decoder geometry differs from the encoder's."""


class UnknownOrderingMode(CodecError):
    """Header ordering-mode byte is not 0, 1 or 2."""


# --- metrics ---

class EmptyStream(CodecError):
    """Statistic requested over an empty symbol list."""
