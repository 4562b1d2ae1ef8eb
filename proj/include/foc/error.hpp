#pragma once

#include <stdexcept>

namespace foc {

/// Base type for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FOC_ERROR_TYPE(Name)  \
  class Name : public Error { \
   public:                    \
    using Error::Error;       \
  };

// Geometry / pixel level
FOC_ERROR_TYPE(OutOfBounds)
FOC_ERROR_TYPE(DimensionMismatch)
FOC_ERROR_TYPE(DegeneratePolygon)
FOC_ERROR_TYPE(ValueOutOfRange)

// Parsing and file I/O
FOC_ERROR_TYPE(ParseError)
FOC_ERROR_TYPE(IoError)
FOC_ERROR_TYPE(UnsupportedBitDepth)
FOC_ERROR_TYPE(ValueError)

// Detection
FOC_ERROR_TYPE(ImageTooSmall)

// Segmentation
FOC_ERROR_TYPE(RoiTooSmall)

// Inpainting
FOC_ERROR_TYPE(MaskTooSmall)
FOC_ERROR_TYPE(NoKnownNeighbors)

// Metrics
FOC_ERROR_TYPE(ZeroGroundTruth)
FOC_ERROR_TYPE(NoObjects)
FOC_ERROR_TYPE(EmptyInput)

// Annotation review
FOC_ERROR_TYPE(ImageIdMismatch)
FOC_ERROR_TYPE(SameReviewer)
FOC_ERROR_TYPE(IllegalTransition)
FOC_ERROR_TYPE(DuplicateApprover)

// Dataset / pipeline configuration
FOC_ERROR_TYPE(InsufficientPool)
FOC_ERROR_TYPE(InfeasibleBalance)
FOC_ERROR_TYPE(ConfigError)

#undef FOC_ERROR_TYPE

}  // namespace foc
