#include "infodesign/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace infodesign::io {

namespace {

using nlohmann::json;

double parse_double(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  require(ec == std::errc() && ptr == text.data() + text.size() && !text.empty(), ErrorCode::Parse,
          "malformed number");
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  for (;;) {
    const auto pos = text.find(sep);
    parts.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return parts;
}

std::pair<double, double> parse_at_pair(std::string_view item) {
  const auto pos = item.find('@');
  require(pos != std::string_view::npos, ErrorCode::Parse, "expected value@weight");
  return {parse_double(item.substr(0, pos)), parse_double(item.substr(pos + 1))};
}

json outcome_json(const WelfareOutcome& p) { return {{"U", p.buyer_surplus}, {"Pi", p.seller_profit}}; }

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(parse_double(part));
  return out;
}

TypeDistribution parse_distribution(std::string_view literal) {
  if (literal == "uniform") return TypeDistribution::uniform();
  const auto colon = literal.find(':');
  require(colon != std::string_view::npos, ErrorCode::Parse, "unknown distribution literal");
  const std::string_view kind = literal.substr(0, colon);
  const std::string_view body = literal.substr(colon + 1);
  if (kind == "point") return TypeDistribution::point_mass(parse_double(body));
  if (kind == "atoms") {
    std::vector<TypeDistribution::Atom> atoms;
    for (auto item : split(body, ',')) {
      const auto [theta, weight] = parse_at_pair(item);
      atoms.push_back({theta, weight});
    }
    return TypeDistribution::atoms(std::move(atoms));
  }
  if (kind == "plcdf") {
    std::vector<TypeDistribution::Knot> knots;
    for (auto item : split(body, ',')) {
      const auto [x, f] = parse_at_pair(item);
      knots.push_back({x, f});
    }
    return TypeDistribution::piecewise_linear(std::move(knots));
  }
  throw Error(ErrorCode::Parse, "unknown distribution literal");
}

DirectMechanism read_mechanism_csv(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::Parse, "empty mechanism file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  require(line == "theta,alpha,beta", ErrorCode::Parse, "mechanism header must be theta,alpha,beta");
  std::vector<double> theta, alpha, beta;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line, ',');
    require(cells.size() == 3, ErrorCode::Parse, "mechanism rows need three columns");
    theta.push_back(parse_double(cells[0]));
    alpha.push_back(parse_double(cells[1]));
    beta.push_back(parse_double(cells[2]));
  }
  auto vec = [](std::vector<double>& v) {
    return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
  };
  return DirectMechanism(vec(theta), vec(alpha), vec(beta));
}

void write_mechanism_csv(std::ostream& out, const DirectMechanism& mech) {
  out << "theta,alpha,beta\n";
  for (std::size_t i = 0; i < mech.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    out << format_number(mech.grid()(k)) << ',' << format_number(mech.alpha()(k)) << ','
        << format_number(mech.beta()(k)) << '\n';
  }
}

void write_boundary_csv(std::ostream& out, const ImplementableSet& solved) {
  out << "lambda_u,lambda_pi,U,Pi,mu1,w1,mu2,w2\n";
  for (const auto& c : solved.certificates) {
    const auto& s = c.split;
    const double mu1 = s.support.at(0);
    const double w1 = s.weights.at(0);
    const double mu2 = s.size() > 1 ? s.support[1] : mu1;
    const double w2 = s.size() > 1 ? s.weights[1] : 0.0;
    out << format_number(c.direction.x()) << ',' << format_number(c.direction.y()) << ','
        << format_number(c.outcome.buyer_surplus) << ',' << format_number(c.outcome.seller_profit)
        << ',' << format_number(mu1) << ',' << format_number(w1) << ',' << format_number(mu2) << ','
        << format_number(w2) << '\n';
  }
}

void write_figure_csv(std::ostream& out, const std::vector<LabeledPoint>& rows) {
  out << "which,U,Pi\n";
  for (const auto& r : rows) {
    out << r.which << ',' << format_number(r.point.buyer_surplus) << ','
        << format_number(r.point.seller_profit) << '\n';
  }
}

std::string protocol_json(const ProtocolOutcome& outcome) {
  json j;
  j["protocol"] = to_string(outcome.protocol);
  j["points"] = json::array();
  for (const auto& p : outcome.points) j["points"].push_back(outcome_json(p));
  if (!outcome.warnings.empty()) j["warnings"] = outcome.warnings;
  return j.dump();
}

many::MultiMenu read_menu_json(std::istream& in, many::MultiMarket* market) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  try {
    const auto values = j.at("values").get<std::vector<double>>();
    const many::MultiMarket mkt(Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                                  static_cast<Eigen::Index>(values.size())));
    many::MultiMenu menu;
    for (const auto& t : j.at("types")) {
      const auto probs = t.at("probs").get<std::vector<double>>();
      menu.types.emplace_back(Eigen::Map<const Eigen::VectorXd>(probs.data(),
                                                                static_cast<Eigen::Index>(probs.size())));
      menu.weights.push_back(t.at("weight").get<double>());
    }
    for (const auto& s : j.at("signals")) {
      const auto rows = s.get<std::vector<std::vector<double>>>();
      require(!rows.empty(), ErrorCode::Parse, "signal needs likelihood rows");
      FiniteSignal::Matrix lik(static_cast<Eigen::Index>(rows.size()),
                               static_cast<Eigen::Index>(rows.front().size()));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        require(rows[r].size() == rows.front().size(), ErrorCode::Parse, "ragged likelihood rows");
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
          lik(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
      }
      menu.signals.emplace_back(std::move(lik));
    }
    menu.validate(mkt);
    if (market != nullptr) *market = mkt;
    return menu;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

std::string menu_json(const many::MultiMenu& menu, const many::MultiMarket& market) {
  json j;
  j["values"] = std::vector<double>(market.values().data(),
                                    market.values().data() + market.values().size());
  j["types"] = json::array();
  j["signals"] = json::array();
  for (std::size_t k = 0; k < menu.types.size(); ++k) {
    const auto& p = menu.types[k].probs();
    j["types"].push_back({{"probs", std::vector<double>(p.data(), p.data() + p.size())},
                          {"weight", menu.weights[k]}});
    const auto& lik = menu.signals[k].likelihood();
    json rows = json::array();
    for (Eigen::Index r = 0; r < lik.rows(); ++r) {
      std::vector<double> row(static_cast<std::size_t>(lik.cols()));
      for (Eigen::Index c = 0; c < lik.cols(); ++c) row[static_cast<std::size_t>(c)] = lik(r, c);
      rows.push_back(row);
    }
    j["signals"].push_back(rows);
  }
  return j.dump(2);
}

}  // namespace infodesign::io
