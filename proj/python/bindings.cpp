#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "popledger/estimate.hpp"
#include "popledger/ledger.hpp"
#include "popledger/simulator.hpp"

namespace py = pybind11;
using namespace popledger;

namespace {

// Poplet amounts cross the boundary as arbitrary-precision Python ints.
py::int_ to_py_int(Poplets amount)
{
    std::string text = amount.str();
    PyObject* obj = PyLong_FromString(text.c_str(), nullptr, 10);
    if (obj == nullptr) {
        throw py::error_already_set();
    }
    return py::reinterpret_steal<py::int_>(obj);
}

Poplets poplets_from_py(const py::int_& value)
{
    std::string text = py::cast<std::string>(py::repr(value));
    auto parsed = Poplets::parse(text);
    if (!parsed) {
        throw py::value_error("amounts are whole non-negative Poplet counts");
    }
    return *parsed;
}

py::object to_fraction(const Rational& value)
{
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(ratio_str(value));
}

Rational rational_from_py(const py::object& value)
{
    auto parsed = parse_number(std::string(py::str(value)));
    if (!parsed) {
        throw py::value_error("expected an int, decimal string, float or Fraction");
    }
    return *parsed;
}

ParticipantId id_from_hex(const std::string& hex)
{
    auto id = ParticipantId::parse(hex);
    if (!id) {
        throw py::value_error("ids are 64 hex digits");
    }
    return *id;
}

Hash32 hash_from_hex_checked(const std::string& hex)
{
    auto h = hash_from_hex(hex);
    if (!h) {
        throw py::value_error("ids are 64 hex digits");
    }
    return *h;
}

py::dict event_to_dict(const DistributionEvent& event)
{
    py::dict d;
    d["epoch"] = event.epoch;
    d["issuance"] = to_py_int(event.issuance);
    d["participants"] = event.participants;
    d["per_participant"] = to_py_int(event.per_participant);
    d["residual"] = to_py_int(event.residual_carried);
    return d;
}

py::dict report_to_dict(const EpochReport& report)
{
    py::dict d;
    d["epoch"] = report.epoch;
    d["value_space"] = to_py_int(report.value_space_size);
    d["issuance"] = to_py_int(report.issuance);
    d["participants"] = report.participants;
    d["per_participant"] = to_py_int(report.per_participant);
    d["popcoin_rate"] = to_fraction(report.popcoin_rate);
    d["reward_factor"] = to_fraction(report.reward_factor);
    d["share_per_participant"] = to_fraction(report.share_per_participant);
    return d;
}

Ledger make_ledger(const std::string& policy, std::uint64_t lifespan,
                   std::optional<std::uint64_t> property_lifespan,
                   std::optional<py::int_> batch)
{
    Ledger::Config config;
    Policy kind;
    if (policy == "democratic") {
        kind = Policy::democratic;
    } else if (policy == "expiring") {
        kind = Policy::expiring;
    } else {
        throw py::value_error("policy must be 'democratic' or 'expiring'");
    }
    config.policy = PolicyKind::make(kind, lifespan);
    config.property_lifespan = property_lifespan;
    if (batch) {
        config.batch = poplets_from_py(*batch);
    }
    return Ledger(config);
}

} // namespace

PYBIND11_MODULE(_popledger, m)
{
    m.doc() = "Democratic-money ledger engine: expanding integer value space, "
              "equal-share distributions, expiring-coin comparison policy, "
              "property escrow, and basic-income estimation.";

    py::register_exception<Error>(m, "LedgerError");

    py::class_<Ledger>(m, "Ledger")
        .def(py::init(&make_ledger), py::arg("policy") = "democratic",
             py::arg("lifespan") = 50, py::arg("property_lifespan") = py::none(),
             py::arg("batch") = py::none())
        .def(
            "enroll",
            [](Ledger& self, const py::bytes& credential) {
                std::string raw = credential;
                auto id = self.enroll(std::span<const std::uint8_t>(
                    reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()));
                return id.str();
            },
            py::arg("credential"), "Enroll a participant; returns the id as hex.")
        .def(
            "depart", [](Ledger& self, const std::string& id) { self.depart(id_from_hex(id)); },
            py::arg("id"))
        .def_property_readonly("active_count", &Ledger::active_count)
        .def_property_readonly("epoch", &Ledger::epoch)
        .def_property_readonly("value_space_size",
                               [](const Ledger& self) { return to_py_int(self.value_space().size); })
        .def_property_readonly("residual",
                               [](const Ledger& self) { return to_py_int(self.value_space().residual); })
        .def_property_readonly("expired_total",
                               [](const Ledger& self) { return to_py_int(self.expired_total()); })
        .def(
            "advance_epoch",
            [](Ledger& self, std::uint64_t epochs) {
                py::list events;
                for (std::uint64_t i = 0; i < epochs; ++i) {
                    events.append(event_to_dict(self.advance_epoch()));
                }
                return events;
            },
            py::arg("epochs") = 1,
            "Run the devaluation-and-distribution cycle; returns one event per epoch.")
        .def(
            "pay",
            [](Ledger& self, const std::string& from, const std::string& to,
               const py::int_& amount) {
                return to_hex(self.pay(id_from_hex(from), id_from_hex(to),
                                       poplets_from_py(amount)));
            },
            py::arg("sender"), py::arg("recipient"), py::arg("amount"))
        .def(
            "balance",
            [](const Ledger& self, const std::string& id) {
                auto b = self.balance(id_from_hex(id));
                return py::make_tuple(to_py_int(b.spendable), to_py_int(b.escrowed));
            },
            py::arg("id"), "Returns (spendable, escrowed) Poplets.")
        .def("conversion_rate",
             [](const Ledger& self) -> py::object {
                 auto rate = self.rate();
                 if (!rate) {
                     return py::none();
                 }
                 return to_fraction(rate->poplets_per_popcoin);
             })
        .def(
            "to_popcoin",
            [](const Ledger& self, const py::int_& amount, unsigned decimals) {
                auto rate = self.rate();
                if (!rate) {
                    throw Error(Errc::NoDistribution, "no distribution has happened yet");
                }
                return to_popcoin_display(poplets_from_py(amount), *rate, decimals);
            },
            py::arg("amount"), py::arg("decimals") = 2)
        .def(
            "register_property",
            [](Ledger& self, const std::string& buyer, const std::string& seller,
               const py::int_& price) {
                return to_hex(self.register_property(id_from_hex(buyer), id_from_hex(seller),
                                                     poplets_from_py(price)));
            },
            py::arg("buyer"), py::arg("seller"), py::arg("price"))
        .def(
            "transfer_property",
            [](Ledger& self, const std::string& property_id, const std::string& seller,
               const std::string& buyer, const py::int_& price) {
                self.transfer_property(hash_from_hex_checked(property_id),
                                       id_from_hex(seller), id_from_hex(buyer),
                                       poplets_from_py(price));
            },
            py::arg("property_id"), py::arg("seller"), py::arg("buyer"), py::arg("price"))
        .def(
            "adjust_escrow",
            [](Ledger& self, const std::string& property_id, const std::string& owner,
               const py::int_& delta) {
                std::string text = py::cast<std::string>(py::repr(delta));
                bool withdraw = !text.empty() && text.front() == '-';
                if (withdraw) {
                    text = text.substr(1);
                }
                auto magnitude = Poplets::parse(text);
                if (!magnitude) {
                    throw py::value_error("delta must be an integer Poplet count");
                }
                self.adjust_escrow(hash_from_hex_checked(property_id), id_from_hex(owner),
                                   *magnitude, withdraw);
            },
            py::arg("property_id"), py::arg("owner"), py::arg("delta"),
            "Positive delta tops escrow up, negative withdraws.")
        .def(
            "place_bid",
            [](Ledger& self, const std::string& property_id, const std::string& bidder,
               const py::int_& amount) {
                self.place_bid(hash_from_hex_checked(property_id), id_from_hex(bidder),
                               poplets_from_py(amount));
            },
            py::arg("property_id"), py::arg("bidder"), py::arg("amount"))
        .def(
            "appraise",
            [](Ledger& self, const std::string& property_id, const py::int_& value) {
                self.appraise(hash_from_hex_checked(property_id), poplets_from_py(value));
            },
            py::arg("property_id"), py::arg("value"))
        .def("properties",
             [](const Ledger& self) {
                 py::list out;
                 for (const auto& [id, record] : self.properties().records) {
                     py::dict d;
                     d["id"] = to_hex(id);
                     d["owner"] = record.owner.str();
                     d["appraised_value"] = to_py_int(record.appraised_value);
                     d["escrow"] = to_py_int(record.escrow);
                     d["tenure"] = record.tenure;
                     d["registered_epoch"] = record.registered_epoch;
                     py::list bids;
                     auto it = self.properties().bids.find(id);
                     if (it != self.properties().bids.end()) {
                         for (const auto& [bidder, bid] : it->second) {
                             py::dict b;
                             b["bidder"] = bidder.str();
                             b["amount"] = to_py_int(bid.amount);
                             b["epoch_placed"] = bid.epoch_placed;
                             bids.append(b);
                         }
                     }
                     d["bids"] = bids;
                     out.append(d);
                 }
                 return out;
             })
        .def("snapshot", &Ledger::snapshot)
        .def_static(
            "restore", [](const std::string& bytes) { return Ledger::restore(bytes); },
            py::arg("snapshot"));

    m.def(
        "estimate_basic_income",
        [](const py::object& m1, const py::object& population, const py::object& rate) {
            Rational pop = rational_from_py(population);
            if (denominator(pop) != 1) {
                throw py::value_error("population must be an integer");
            }
            Rational income =
                estimate_basic_income(rational_from_py(m1), numerator(pop),
                                      rational_from_py(rate));
            return py::make_tuple(render_estimate(income), to_fraction(income));
        },
        py::arg("m1"), py::arg("population"), py::arg("rate"),
        "Returns (rendered 3-significant-digit string, exact Fraction).");

    m.def(
        "poverty_gap",
        [](const py::object& income) {
            auto gap = poverty_gap(rational_from_py(income));
            py::dict d;
            d["ratio"] = to_fraction(gap.ratio);
            d["per_day"] = to_fraction(gap.per_day);
            return d;
        },
        py::arg("income_per_year"));

    m.def(
        "run_scenario",
        [](const std::string& text) {
            auto reports = run_scenario(parse_scenario(text));
            py::list out;
            for (const auto& report : reports) {
                out.append(report_to_dict(report));
            }
            return out;
        },
        py::arg("scenario_text"), "Parse scenario text and run it; returns per-epoch reports.");

    m.def(
        "scenario_csv",
        [](const std::string& text) {
            return reports_to_csv(run_scenario(parse_scenario(text)));
        },
        py::arg("scenario_text"));

    m.def(
        "adoption_reward_factor",
        [](std::uint64_t world_population, std::uint64_t users) {
            return to_fraction(adoption_reward_factor(world_population, users));
        },
        py::arg("world_population"), py::arg("users"));
}
