#include "grouprep/types.hpp"

namespace grouprep {

const char* err_name(Err kind) {
  switch (kind) {
    case Err::NonAssociative: return "NonAssociative";
    case Err::NoIdentity: return "NoIdentity";
    case Err::NoInverse: return "NoInverse";
    case Err::MalformedTable: return "MalformedTable";
    case Err::UnsupportedSize: return "UnsupportedSize";
    case Err::DegenerateEigenSplit: return "DegenerateEigenSplit";
    case Err::NotClassFunction: return "NotClassFunction";
    case Err::NonIntegralMultiplicity: return "NonIntegralMultiplicity";
    case Err::NotClassConstant: return "NotClassConstant";
    case Err::GroupMismatch: return "GroupMismatch";
    case Err::RankAmbiguous: return "RankAmbiguous";
    case Err::SplitDegenerate: return "SplitDegenerate";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::TypesDiffer: return "TypesDiffer";
    case Err::InsufficientRoom: return "InsufficientRoom";
    case Err::EmptyInfinitePart: return "EmptyInfinitePart";
    case Err::NotATruncation: return "NotATruncation";
    case Err::InvalidPair: return "InvalidPair";
    case Err::UnknownGenerator: return "UnknownGenerator";
    case Err::WordListMismatch: return "WordListMismatch";
    case Err::DimMismatch: return "DimMismatch";
    case Err::NotUnitary: return "NotUnitary";
    case Err::ParseError: return "ParseError";
    case Err::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace grouprep
