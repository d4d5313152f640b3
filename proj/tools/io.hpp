#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <conewalk/exact_engine.hpp>
#include <conewalk/gof.hpp>
#include <conewalk/sampler.hpp>
#include <conewalk/tail_analysis.hpp>

namespace conewalk::io {

/// %.17g
std::string num(double v);

/// `n,p,err_lo,err_hi` for n = 1..n_max; true value in [p - err_lo, p + err_hi].
void write_tail_csv(std::ostream& out, const TailSeries& tail);
TailSeries read_tail_csv(std::istream& in);

/// One JSON object per path: {"n":..,"sigma":..,"points":[[x,y],...]}.
void write_paths_jsonl(std::ostream& out, const PathEnsemble& ensemble);
PathEnsemble read_paths_jsonl(std::istream& in);

/// `n,sigma,x[,y[,z]],mass`, one row per lattice state of the conditional law.
void write_endpoint_csv(std::ostream& out, const EndpointLaw& law);
EndpointLaw read_endpoint_csv(std::istream& in);

std::string to_json(const GofReport& r);
std::string to_json(const IndexEstimate& e);
std::string ensemble_summary_json(const PathEnsemble& ensemble);

}  // namespace conewalk::io
