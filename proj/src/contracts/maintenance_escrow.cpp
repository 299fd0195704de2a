#include "rbn/contracts/maintenance_escrow.hpp"

#include <nlohmann/json.hpp>

#include "contracts/contract_args.hpp"
#include "rbn/oracle.hpp"

namespace rbn {

namespace {
const char* phase_name(MaintenanceEscrowContract::Phase p) {
    using Phase = MaintenanceEscrowContract::Phase;
    switch (p) {
    case Phase::Quoted: return "Quoted";
    case Phase::Funded: return "Funded";
    case Phase::ProviderSignaled: return "ProviderSignaled";
    case Phase::Confirmed: return "Confirmed";
    case Phase::Refunded: return "Refunded";
    }
    return "?";
}
} // namespace

std::string MaintenanceEscrowContract::expected_subject(const Address& vehicle,
                                                        const std::string& obligations) {
    return "service-ok:" + vehicle.display() + ":" + obligations;
}

Result<std::unique_ptr<ContractBase>>
MaintenanceEscrowContract::create(const DeployContext& ctx, const std::vector<Value>& args) {
    try {
        cargs::expect_count(args, 6, Errc::ConstructorError);
        auto c = std::make_unique<MaintenanceEscrowContract>();
        c->vehicle_ = cargs::addr(args, 0, "vehicle", Errc::ConstructorError);
        c->provider_ = cargs::addr(args, 1, "provider", Errc::ConstructorError);
        c->quote_ = cargs::u64(args, 2, "quote", Errc::ConstructorError);
        c->obligations_ = cargs::str(args, 3, "obligations", Errc::ConstructorError);
        c->timeout_height_ = cargs::u64(args, 4, "timeout_height", Errc::ConstructorError);
        c->oracle_ = cargs::addr(args, 5, "oracle", Errc::ConstructorError);
        contract_require(c->quote_ > 0, Errc::ConstructorError, "quote must be positive");
        contract_require(c->vehicle_ != c->provider_, Errc::ConstructorError,
                         "vehicle and provider must differ");
        contract_require(ctx.attached == 0, Errc::ConstructorError,
                         "escrow starts unfunded; use fund()");
        return Result<std::unique_ptr<ContractBase>>::ok(std::move(c));
    } catch (const ContractError& e) {
        return Result<std::unique_ptr<ContractBase>>::err(e.error().code, e.error().message);
    }
}

bool MaintenanceEscrowContract::has_method(std::string_view m) const {
    return m == "fund" || m == "signal_complete" || m == "confirm" ||
           m == "refund_after_timeout";
}

void MaintenanceEscrowContract::call(CallContext& ctx, std::string_view method,
                                     const std::vector<Value>& args) {
    ctx.step();
    if (method == "fund") {
        contract_require(ctx.caller() == vehicle_, Errc::Unauthorized,
                         "only the vehicle funds this escrow");
        contract_require(phase_ == Phase::Quoted, Errc::StateError, "escrow is not in Quoted");
        contract_require(ctx.height() <= timeout_height_, Errc::StateError,
                         "quote expired at height " + std::to_string(timeout_height_));
        contract_require(ctx.attached() == quote_, Errc::WrongAmount,
                         "quote is " + std::to_string(quote_) + ", attached " +
                             std::to_string(ctx.attached()));
        phase_ = Phase::Funded;
        ctx.emit("EscrowFunded", {{"amount", Value(quote_)}});
    } else if (method == "signal_complete") {
        contract_require(ctx.caller() == provider_, Errc::Unauthorized,
                         "only the provider signals completion");
        contract_require(phase_ == Phase::Funded, Errc::StateError, "escrow is not Funded");
        phase_ = Phase::ProviderSignaled;
        ctx.emit("ServiceSignaled", {{"provider", Value(provider_.display())}});
    } else if (method == "confirm") {
        contract_require(ctx.caller() == vehicle_, Errc::Unauthorized,
                         "only the vehicle confirms the service");
        contract_require(phase_ == Phase::ProviderSignaled, Errc::StateError,
                         "provider has not signaled completion");
        cargs::expect_count(args, 1, Errc::StateError);
        const Bytes& raw = cargs::bytes(args, 0, "attestation", Errc::BadAttestation);
        auto att = Attestation::decode(raw);
        contract_require(att.is_ok(), Errc::BadAttestation, "attestation bytes do not decode");
        contract_require(verify_attestation(att.value(), oracle_), Errc::BadAttestation,
                         "attestation not signed by the pinned oracle");
        contract_require(att.value().subject == expected_subject(vehicle_, obligations_),
                         Errc::BadAttestation, "attestation subject mismatch");
        contract_require(att.value().value == Value(true), Errc::BadAttestation,
                         "attestation does not report service-ok");
        phase_ = Phase::Confirmed;
        ctx.pay(provider_, quote_);
        ctx.emit("ServiceConfirmed", {{"amount", Value(quote_)},
                                      {"provider", Value(provider_.display())}});
    } else if (method == "refund_after_timeout") {
        contract_require(phase_ == Phase::Funded || phase_ == Phase::ProviderSignaled,
                         Errc::StateError, "no funds to refund");
        contract_require(ctx.height() > timeout_height_, Errc::StateError,
                         "timeout height not reached");
        phase_ = Phase::Refunded;
        ctx.pay(vehicle_, quote_);
        ctx.emit("EscrowRefunded", {{"amount", Value(quote_)},
                                    {"vehicle", Value(vehicle_.display())}});
    }
}

nlohmann::ordered_json MaintenanceEscrowContract::state_json() const {
    nlohmann::ordered_json j;
    j["obligations"] = obligations_;
    j["oracle"] = oracle_.display();
    j["phase"] = phase_name(phase_);
    j["provider"] = provider_.display();
    j["quote"] = quote_;
    j["timeout_height"] = timeout_height_;
    j["vehicle"] = vehicle_.display();
    return j;
}

std::unique_ptr<ContractBase> MaintenanceEscrowContract::clone() const {
    return std::make_unique<MaintenanceEscrowContract>(*this);
}

} // namespace rbn
