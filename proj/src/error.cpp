#include "randles/error.hpp"

namespace randles {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::InvalidParams: return "invalid_params";
        case Errc::InvalidBand: return "invalid_band";
        case Errc::NyquistViolation: return "nyquist_violation";
        case Errc::ZeroSignal: return "zero_signal";
        case Errc::TooShortRecord: return "too_short_record";
        case Errc::RankDeficient: return "rank_deficient";
        case Errc::NotInImage: return "not_in_image";
        case Errc::DuplicateRoots: return "duplicate_roots";
        case Errc::SingularSystem: return "singular_system";
        case Errc::PoleOnAxis: return "pole_on_axis";
        case Errc::NoAcceptedTrials: return "no_accepted_trials";
        case Errc::EnumerationCap: return "enumeration_cap";
        case Errc::ConfigError: return "config_error";
        case Errc::IoError: return "io_error";
    }
    return "unknown";
}

}  // namespace randles
