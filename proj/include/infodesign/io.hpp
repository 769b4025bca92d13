#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "infodesign/core.hpp"
#include "infodesign/implications.hpp"
#include "infodesign/manyvalues.hpp"
#include "infodesign/mechanisms.hpp"
#include "infodesign/persuasion.hpp"

namespace infodesign::io {

// Shortest decimal that round-trips to the same double.
std::string format_number(double v);

// `uniform`, `point:0.3`, `atoms:0.2@0.5,0.8@0.5`, `plcdf:0@0,0.5@0.3,1@1`
// (plcdf knots are x@F(x)).
TypeDistribution parse_distribution(std::string_view literal);
std::vector<double> parse_number_list(std::string_view text);

// CSV with header `theta,alpha,beta`, rows sorted by theta.
DirectMechanism read_mechanism_csv(std::istream& in);
void write_mechanism_csv(std::ostream& out, const DirectMechanism& mech);

void write_boundary_csv(std::ostream& out, const ImplementableSet& solved);

struct LabeledPoint {
  std::string which;
  WelfareOutcome point;
};
void write_figure_csv(std::ostream& out, const std::vector<LabeledPoint>& rows);

std::string protocol_json(const ProtocolOutcome& outcome);

many::MultiMenu read_menu_json(std::istream& in, many::MultiMarket* market);
std::string menu_json(const many::MultiMenu& menu, const many::MultiMarket& market);

}  // namespace infodesign::io
