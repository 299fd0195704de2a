#include <doctest.h>

#include <nlohmann/json.hpp>

#include "rbn/contracts/maintenance_escrow.hpp"
#include "rbn/oracle.hpp"
#include "support/helpers.hpp"

using namespace rbn;
using testkit::Net;

namespace {

std::vector<Value> ride_args(const Net& net, const testkit::Party& vehicle,
                             std::uint64_t fee, std::uint64_t rate,
                             std::initializer_list<const testkit::Party*> owners) {
    (void)net;
    std::vector<Value> args = {Value(vehicle.address.display()), Value(Bytes(32, 0x42)),
                               Value(fee), Value(rate)};
    for (const auto* o : owners) args.emplace_back(o->address.display());
    return args;
}

std::string phase_of(Net& net, const Address& contract) {
    return net.ledger.contract_state(contract).value()["state"]["phase"].get<std::string>();
}

} // namespace

TEST_SUITE("ride sharing") {

    TEST_CASE("request_ride emits RideReq exactly as named and escrows the fare") {
        Net net(4, 100);
        auto ride = net.deploy(net[0], 0, "ride_sharing",
                               ride_args(net, net[0], 10, 0, {&net[1], &net[2]}));
        REQUIRE(ride.is_ok());
        auto r = net.call(net[3], ride.value(), 10, "request_ride", {});
        REQUIRE(r.ok);
        auto events = net.ledger.query_events(ride.value(), std::string("RideReq"));
        REQUIRE(events.size() == 1);
        CHECK(events[0].fields.at("_passengerAddr") == Value(net[3].address.display()));
        CHECK(events[0].fields.at("rideCost") == Value(std::uint64_t{10}));
        CHECK(net.ledger.contracts().held_funds(ride.value()) == 10);

        // second request while a ride is active fails
        auto busy = net.call(net[1], ride.value(), 10, "request_ride", {});
        REQUIRE_FALSE(busy.ok);
        CHECK(busy.error->code == Errc::StateError);

        // wrong fare fails
        REQUIRE(net.call(net[0], ride.value(), 0, "complete_ride", {}).ok);
        auto cheap = net.call(net[3], ride.value(), 9, "request_ride", {});
        REQUIRE_FALSE(cheap.ok);
        CHECK(cheap.error->code == Errc::WrongAmount);
    }

    TEST_CASE("payout remainder table: fee splits with remainder to the first owner") {
        // enumerate fees that leave remainder 0, 1 and 2 over 3 owners
        struct Row {
            std::uint64_t fee;
            std::uint64_t expect[3];
        };
        const Row rows[] = {
            {9, {3, 3, 3}},
            {10, {4, 3, 3}},
            {11, {5, 3, 3}},
        };
        for (const Row& row : rows) {
            Net net(5, 100);
            auto ride = net.deploy(net[0], 0, "ride_sharing",
                                   ride_args(net, net[0], row.fee, 0,
                                             {&net[1], &net[2], &net[3]}));
            REQUIRE(ride.is_ok());
            REQUIRE(net.call(net[4], ride.value(), row.fee, "request_ride", {}).ok);
            REQUIRE(net.call(net[0], ride.value(), 0, "complete_ride", {}).ok);
            for (int i = 0; i < 3; ++i)
                CHECK(net.ledger.balance(net[1 + i].address) == 100 + row.expect[i]);
            CHECK(net.ledger.contracts().held_funds(ride.value()) == 0);
        }
    }

    TEST_CASE("maintenance fund share accrues and only the vehicle withdraws") {
        Net net(3, 100);
        auto ride = net.deploy(net[0], 0, "ride_sharing",
                               ride_args(net, net[0], 10, 50, {&net[1]}));
        REQUIRE(net.call(net[2], ride.value(), 10, "request_ride", {}).ok);
        REQUIRE(net.call(net[0], ride.value(), 0, "complete_ride", {}).ok);
        CHECK(net.ledger.balance(net[1].address) == 105); // owner share 5
        CHECK(net.ledger.contracts().held_funds(ride.value()) == 5);

        auto not_vehicle = net.call(net[1], ride.value(), 0, "withdraw_maintenance",
                                    {Value(std::uint64_t{5})});
        REQUIRE_FALSE(not_vehicle.ok);
        CHECK(not_vehicle.error->code == Errc::Unauthorized);
        REQUIRE(net.call(net[0], ride.value(), 0, "withdraw_maintenance",
                         {Value(std::uint64_t{5})})
                    .ok);
        CHECK(net.ledger.balance(net[0].address) == 105);
        CHECK(net.ledger.contracts().held_funds(ride.value()) == 0);
    }

    TEST_CASE("ownership transfer: approve then accept, events Appr and Transf") {
        Net net(4, 100);
        auto ride = net.deploy(net[0], 0, "ride_sharing",
                               ride_args(net, net[0], 10, 0, {&net[1], &net[2]}));
        REQUIRE(net.call(net[1], ride.value(), 0, "approve_transfer",
                         {Value(net[3].address.display())})
                    .ok);
        auto apprs = net.ledger.query_events(ride.value(), std::string("Appr"));
        REQUIRE(apprs.size() == 1);
        CHECK(apprs[0].fields.at("_owner") == Value(net[1].address.display()));
        CHECK(apprs[0].fields.at("_approved") == Value(net[3].address.display()));

        // only the approved transferee may accept
        auto wrong = net.call(net[2], ride.value(), 0, "accept_transfer", {});
        REQUIRE_FALSE(wrong.ok);
        REQUIRE(net.call(net[3], ride.value(), 0, "accept_transfer", {}).ok);
        auto transfs = net.ledger.query_events(ride.value(), std::string("Transf"));
        REQUIRE(transfs.size() == 1);
        CHECK(transfs[0].fields.at("_from") == Value(net[1].address.display()));
        CHECK(transfs[0].fields.at("_to") == Value(net[3].address.display()));

        auto owners = net.ledger.contract_state(ride.value()).value()["state"]["owners"];
        CHECK(owners.size() == 2);
        CHECK(owners[0] == net[3].address.display());

        // the ex-owner has lost owner powers
        auto ex = net.call(net[1], ride.value(), 0, "approve_transfer",
                           {Value(net[2].address.display())});
        REQUIRE_FALSE(ex.ok);
        CHECK(ex.error->code == Errc::Unauthorized);
    }
}

TEST_SUITE("governance ballots") {

    TEST_CASE("three owners, two yes: fee 10 -> 12 after execute") {
        Net net(4, 100);
        auto ride = net.deploy(net[0], 0, "ride_sharing",
                               ride_args(net, net[0], 10, 0, {&net[1], &net[2], &net[3]}));
        auto prop = net.call(net[1], ride.value(), 0, "propose",
                             {Value("service_fee"), Value(std::uint64_t{12}),
                              Value(std::uint64_t{50})});
        REQUIRE(prop.ok);
        std::uint64_t ballot = prop.result.at("ballot").as_u64();
        REQUIRE(net.call(net[1], ride.value(), 0, "vote", {Value(ballot), Value(true)}).ok);
        REQUIRE(net.call(net[2], ride.value(), 0, "vote", {Value(ballot), Value(true)}).ok);
        auto exec = net.call(net[3], ride.value(), 0, "execute", {Value(ballot)});
        REQUIRE(exec.ok);
        CHECK(exec.result.at("passed") == Value(true));
        CHECK(net.ledger.contract_state(ride.value()).value()["state"]["params"]["service_fee"] ==
              12);
    }

    TEST_CASE("four owners, 2 yes 2 no: strict majority fails the ballot") {
        Net net(5, 100);
        auto ride = net.deploy(net[0], 0, "ride_sharing",
                               ride_args(net, net[0], 10, 0,
                                         {&net[1], &net[2], &net[3], &net[4]}));
        auto prop = net.call(net[1], ride.value(), 0, "propose",
                             {Value("service_fee"), Value(std::uint64_t{12}),
                              Value(std::uint64_t{50})});
        std::uint64_t ballot = prop.result.at("ballot").as_u64();
        REQUIRE(net.call(net[1], ride.value(), 0, "vote", {Value(ballot), Value(true)}).ok);
        REQUIRE(net.call(net[2], ride.value(), 0, "vote", {Value(ballot), Value(true)}).ok);
        REQUIRE(net.call(net[3], ride.value(), 0, "vote", {Value(ballot), Value(false)}).ok);
        REQUIRE(net.call(net[4], ride.value(), 0, "vote", {Value(ballot), Value(false)}).ok);
        auto exec = net.call(net[1], ride.value(), 0, "execute", {Value(ballot)});
        REQUIRE(exec.ok);
        CHECK(exec.result.at("passed") == Value(false));
        CHECK(net.ledger.contract_state(ride.value()).value()["state"]["params"]["service_fee"] ==
              10);
    }

    TEST_CASE("vote after deadline, double vote, non-owner, double execute") {
        Net net(3, 100);
        auto ride = net.deploy(net[0], 0, "ride_sharing",
                               ride_args(net, net[0], 10, 0, {&net[1], &net[2]}));
        auto prop = net.call(net[1], ride.value(), 0, "propose",
                             {Value("service_fee"), Value(std::uint64_t{12}),
                              Value(std::uint64_t{4})});
        std::uint64_t ballot = prop.result.at("ballot").as_u64();

        auto outsider = net.call(net[0], ride.value(), 0, "vote", {Value(ballot), Value(true)});
        REQUIRE_FALSE(outsider.ok);
        CHECK(outsider.error->code == Errc::Unauthorized);

        REQUIRE(net.call(net[1], ride.value(), 0, "vote", {Value(ballot), Value(true)}).ok);
        auto twice = net.call(net[1], ride.value(), 0, "vote", {Value(ballot), Value(false)});
        REQUIRE_FALSE(twice.ok);
        CHECK(twice.error->code == Errc::DoubleVote);

        net.advance_to(5);
        auto late = net.call(net[2], ride.value(), 0, "vote", {Value(ballot), Value(true)});
        REQUIRE_FALSE(late.ok);
        CHECK(late.error->code == Errc::StateError);

        // after the deadline execute is allowed; 1 yes of 2 owners fails
        auto exec = net.call(net[1], ride.value(), 0, "execute", {Value(ballot)});
        REQUIRE(exec.ok);
        CHECK(exec.result.at("passed") == Value(false));
        auto again = net.call(net[1], ride.value(), 0, "execute", {Value(ballot)});
        REQUIRE_FALSE(again.ok);
        CHECK(again.error->code == Errc::StateError);
    }

    TEST_CASE("execute before deadline needs a mathematically decided outcome") {
        Net net(4, 100);
        auto ride = net.deploy(net[0], 0, "ride_sharing",
                               ride_args(net, net[0], 10, 0, {&net[1], &net[2], &net[3]}));
        auto prop = net.call(net[1], ride.value(), 0, "propose",
                             {Value("service_fee"), Value(std::uint64_t{15}),
                              Value(std::uint64_t{50})});
        std::uint64_t ballot = prop.result.at("ballot").as_u64();
        REQUIRE(net.call(net[1], ride.value(), 0, "vote", {Value(ballot), Value(true)}).ok);
        auto undecided = net.call(net[1], ride.value(), 0, "execute", {Value(ballot)});
        REQUIRE_FALSE(undecided.ok); // 1 yes, 2 outstanding: could still fail
        CHECK(undecided.error->code == Errc::StateError);
        REQUIRE(net.call(net[2], ride.value(), 0, "vote", {Value(ballot), Value(true)}).ok);
        auto decided = net.call(net[3], ride.value(), 0, "execute", {Value(ballot)});
        REQUIRE(decided.ok); // 2 of 3 is majority no matter the last vote
        CHECK(decided.result.at("passed") == Value(true));
    }
}

TEST_SUITE("maintenance escrow") {

    TEST_CASE("full happy path: quote 80 reaches the provider") {
        Net net(3, 200); // vehicle, provider, oracle
        OracleAgent oracle(net[2].keys);
        auto esc = net.deploy(net[1], 0, "maintenance_escrow",
                              {Value(net[0].address.display()), Value(net[1].address.display()),
                               Value(std::uint64_t{80}), Value("oil-change-v1"),
                               Value(std::uint64_t{30}), Value(net[2].address.display())});
        REQUIRE(esc.is_ok());
        REQUIRE(net.call(net[0], esc.value(), 80, "fund", {}).ok);
        CHECK(phase_of(net, esc.value()) == "Funded");
        REQUIRE(net.call(net[1], esc.value(), 0, "signal_complete", {}).ok);
        CHECK(phase_of(net, esc.value()) == "ProviderSignaled");

        auto att = oracle.publish(
            net[2].keys,
            MaintenanceEscrowContract::expected_subject(net[0].address, "oil-change-v1"),
            Value(true), net.ledger.height());
        REQUIRE(att.is_ok());
        REQUIRE(net.call(net[0], esc.value(), 0, "confirm", {Value(att.value().encode())}).ok);
        CHECK(phase_of(net, esc.value()) == "Confirmed");
        CHECK(net.ledger.balance(net[1].address) == 280);
        CHECK(net.ledger.balance(net[0].address) == 120);
        CHECK(net.conserved());
    }

    TEST_CASE("timeout refunds the vehicle when the provider never signals") {
        Net net(3, 200);
        auto esc = net.deploy(net[1], 0, "maintenance_escrow",
                              {Value(net[0].address.display()), Value(net[1].address.display()),
                               Value(std::uint64_t{80}), Value("oil"), Value(std::uint64_t{5}),
                               Value(net[2].address.display())});
        REQUIRE(net.call(net[0], esc.value(), 80, "fund", {}).ok);
        auto early = net.call(net[0], esc.value(), 0, "refund_after_timeout", {});
        REQUIRE_FALSE(early.ok);
        net.advance_to(6);
        REQUIRE(net.call(net[0], esc.value(), 0, "refund_after_timeout", {}).ok);
        CHECK(phase_of(net, esc.value()) == "Refunded");
        CHECK(net.ledger.balance(net[0].address) == 200);
    }

    TEST_CASE("attestations signed by the wrong key are rejected") {
        Net net(4, 200); // vehicle, provider, oracle, impostor
        auto esc = net.deploy(net[1], 0, "maintenance_escrow",
                              {Value(net[0].address.display()), Value(net[1].address.display()),
                               Value(std::uint64_t{80}), Value("oil"), Value(std::uint64_t{30}),
                               Value(net[2].address.display())});
        REQUIRE(net.call(net[0], esc.value(), 80, "fund", {}).ok);
        REQUIRE(net.call(net[1], esc.value(), 0, "signal_complete", {}).ok);

        std::string subject =
            MaintenanceEscrowContract::expected_subject(net[0].address, "oil");

        // impostor signs the right subject with the wrong key
        OracleAgent impostor(net[3].keys);
        auto forged = impostor.publish(net[3].keys, subject, Value(true), 1);
        auto r1 = net.call(net[0], esc.value(), 0, "confirm", {Value(forged.value().encode())});
        REQUIRE_FALSE(r1.ok);
        CHECK(r1.error->code == Errc::BadAttestation);

        // right oracle, wrong subject
        OracleAgent oracle(net[2].keys);
        auto wrong_subject = oracle.publish(net[2].keys, "price:oil-change", Value(true), 1);
        auto r2 = net.call(net[0], esc.value(), 0, "confirm",
                           {Value(wrong_subject.value().encode())});
        REQUIRE_FALSE(r2.ok);

        // right oracle, right subject, not service-ok
        auto not_ok = oracle.publish(net[2].keys, subject, Value(false), 1);
        auto r3 = net.call(net[0], esc.value(), 0, "confirm", {Value(not_ok.value().encode())});
        REQUIRE_FALSE(r3.ok);

        // a tampered copy of a genuine attestation fails the signature
        auto genuine = oracle.publish(net[2].keys, subject, Value(true), 1).value();
        genuine.height += 1;
        auto r4 = net.call(net[0], esc.value(), 0, "confirm", {Value(genuine.encode())});
        REQUIRE_FALSE(r4.ok);
        CHECK(phase_of(net, esc.value()) == "ProviderSignaled");
    }
}

TEST_SUITE("unilateral reward") {

    TEST_CASE("post, claim, confirm: claimant is paid exactly once") {
        Net net(2, 100);
        auto rew = net.deploy(net[0], 25, "unilateral_reward",
                              {Value("carry to dock"), Value(std::uint64_t{20}),
                               Value(std::uint64_t{25})});
        REQUIRE(rew.is_ok());
        CHECK(net.ledger.balance(net[0].address) == 75);
        REQUIRE(net.call(net[1], rew.value(), 0, "claim", {Value("arrived")}).ok);
        REQUIRE(net.call(net[0], rew.value(), 0, "confirm_and_pay", {}).ok);
        CHECK(net.ledger.balance(net[1].address) == 125);
        CHECK(phase_of(net, rew.value()) == "Paid");

        auto again = net.call(net[0], rew.value(), 0, "confirm_and_pay", {});
        REQUIRE_FALSE(again.ok);
        CHECK(again.error->code == Errc::StateError);
        CHECK(net.ledger.balance(net[1].address) == 125);
    }

    TEST_CASE("escrow must equal the declared reward") {
        Net net(1, 100);
        auto wrong = net.deploy(net[0], 10, "unilateral_reward",
                                {Value("t"), Value(std::uint64_t{20}), Value(std::uint64_t{25})});
        REQUIRE(wrong.is_err());
        CHECK(wrong.error().code == Errc::ConstructorError);
        CHECK(net.ledger.balance(net[0].address) == 100); // refunded
    }

    TEST_CASE("expiry refunds the offeror; late claims fail") {
        Net net(2, 100);
        auto rew = net.deploy(net[0], 25, "unilateral_reward",
                              {Value("t"), Value(std::uint64_t{3}), Value(std::uint64_t{25})});
        auto early = net.call(net[1], rew.value(), 0, "expire", {});
        REQUIRE_FALSE(early.ok);
        net.advance_to(4);
        auto late_claim = net.call(net[1], rew.value(), 0, "claim", {Value("x")});
        REQUIRE_FALSE(late_claim.ok);
        CHECK(late_claim.error->code == Errc::Expired);
        REQUIRE(net.call(net[1], rew.value(), 0, "expire", {}).ok);
        CHECK(phase_of(net, rew.value()) == "Expired");
        CHECK(net.ledger.balance(net[0].address) == 100);
    }
}

TEST_SUITE("arbitrated escrow") {

    TEST_CASE("no-dispute path pays the seller") {
        Net net(3, 200);
        auto esc = net.deploy(net[0], 0, "arbitrated_escrow",
                              {Value(net[0].address.display()), Value(net[1].address.display()),
                               Value(net[2].address.display()), Value(std::uint64_t{100}),
                               Value(std::uint64_t{30})});
        REQUIRE(net.call(net[0], esc.value(), 100, "fund", {}).ok);
        REQUIRE(net.call(net[1], esc.value(), 0, "mark_delivered", {}).ok);
        REQUIRE(net.call(net[0], esc.value(), 0, "release", {}).ok);
        CHECK(phase_of(net, esc.value()) == "Released");
        CHECK(net.ledger.balance(net[1].address) == 300);
    }

    TEST_CASE("dispute path refunds the buyer via the agent") {
        Net net(3, 200);
        auto esc = net.deploy(net[0], 0, "arbitrated_escrow",
                              {Value(net[0].address.display()), Value(net[1].address.display()),
                               Value(net[2].address.display()), Value(std::uint64_t{100}),
                               Value(std::uint64_t{30})});
        REQUIRE(net.call(net[0], esc.value(), 100, "fund", {}).ok);
        REQUIRE(net.call(net[0], esc.value(), 0, "dispute", {}).ok);

        auto buyer_arbitrates = net.call(net[0], esc.value(), 0, "arbitrate", {Value("refund")});
        REQUIRE_FALSE(buyer_arbitrates.ok);
        CHECK(buyer_arbitrates.error->code == Errc::Unauthorized);

        REQUIRE(net.call(net[2], esc.value(), 0, "arbitrate", {Value("refund")}).ok);
        CHECK(phase_of(net, esc.value()) == "ResolvedRefund");
        CHECK(net.ledger.balance(net[0].address) == 200);

        // terminal phases are absorbing
        auto again = net.call(net[2], esc.value(), 0, "arbitrate", {Value("pay")});
        REQUIRE_FALSE(again.ok);
    }

    TEST_CASE("timeouts recover funds from every non-terminal funded phase") {
        // Funded past the deadline -> buyer refund
        {
            Net net(3, 200);
            auto esc = net.deploy(net[0], 0, "arbitrated_escrow",
                                  {Value(net[0].address.display()),
                                   Value(net[1].address.display()),
                                   Value(net[2].address.display()), Value(std::uint64_t{100}),
                                   Value(std::uint64_t{4})});
            REQUIRE(net.call(net[0], esc.value(), 100, "fund", {}).ok);
            net.advance_to(5);
            REQUIRE(net.call(net[1], esc.value(), 0, "timeout_refund", {}).ok);
            CHECK(net.ledger.balance(net[0].address) == 200);
        }
        // Delivered past the deadline -> seller payment
        {
            Net net(3, 200);
            auto esc = net.deploy(net[0], 0, "arbitrated_escrow",
                                  {Value(net[0].address.display()),
                                   Value(net[1].address.display()),
                                   Value(net[2].address.display()), Value(std::uint64_t{100}),
                                   Value(std::uint64_t{4})});
            REQUIRE(net.call(net[0], esc.value(), 100, "fund", {}).ok);
            REQUIRE(net.call(net[1], esc.value(), 0, "mark_delivered", {}).ok);
            net.advance_to(5);
            REQUIRE(net.call(net[0], esc.value(), 0, "timeout_release", {}).ok);
            CHECK(net.ledger.balance(net[1].address) == 300);
        }
        // Disputed past the deadline -> buyer refund
        {
            Net net(3, 200);
            auto esc = net.deploy(net[0], 0, "arbitrated_escrow",
                                  {Value(net[0].address.display()),
                                   Value(net[1].address.display()),
                                   Value(net[2].address.display()), Value(std::uint64_t{100}),
                                   Value(std::uint64_t{4})});
            REQUIRE(net.call(net[0], esc.value(), 100, "fund", {}).ok);
            REQUIRE(net.call(net[1], esc.value(), 0, "dispute", {}).ok);
            net.advance_to(5);
            REQUIRE(net.call(net[2], esc.value(), 0, "timeout_refund", {}).ok);
            CHECK(net.ledger.balance(net[0].address) == 200);
        }
    }
}

TEST_SUITE("game betting contract") {

    TEST_CASE("tictactoe diagonal win pays double the stake") {
        Net net(2, 100);
        auto game = net.deploy(net[0], 10, "game_betting",
                               {Value("tictactoe"), Value(std::uint64_t{10})});
        REQUIRE(game.is_ok());
        auto wrong_stake = net.call(net[1], game.value(), 9, "join", {});
        REQUIRE_FALSE(wrong_stake.ok);
        CHECK(wrong_stake.error->code == Errc::WrongStake);
        REQUIRE(net.call(net[1], game.value(), 10, "join", {}).ok);

        // X: 0, 4, 8 wins the diagonal
        REQUIRE(net.call(net[0], game.value(), 0, "move", {Value("0")}).ok);
        REQUIRE(net.call(net[1], game.value(), 0, "move", {Value("1")}).ok);
        REQUIRE(net.call(net[0], game.value(), 0, "move", {Value("4")}).ok);
        REQUIRE(net.call(net[1], game.value(), 0, "move", {Value("2")}).ok);
        REQUIRE(net.call(net[0], game.value(), 0, "move", {Value("8")}).ok);
        CHECK(phase_of(net, game.value()) == "Settled");
        CHECK(net.ledger.balance(net[0].address) == 110);
        CHECK(net.ledger.balance(net[1].address) == 90);
    }

    TEST_CASE("chess: pawn a2a5 from the start is an illegal move") {
        Net net(2, 100);
        auto game = net.deploy(net[0], 10, "game_betting",
                               {Value("chess"), Value(std::uint64_t{10})});
        REQUIRE(net.call(net[1], game.value(), 10, "join", {}).ok);
        auto bad = net.call(net[0], game.value(), 0, "move", {Value("a2a5")});
        REQUIRE_FALSE(bad.ok);
        CHECK(bad.error->code == Errc::IllegalMove);
        // state unchanged, the same player is still on turn
        REQUIRE(net.call(net[0], game.value(), 0, "move", {Value("a2a4")}).ok);
    }

    TEST_CASE("moving out of turn is NotYourTurn; outsiders are Unauthorized") {
        Net net(3, 100);
        auto game = net.deploy(net[0], 10, "game_betting",
                               {Value("chess"), Value(std::uint64_t{10})});
        REQUIRE(net.call(net[1], game.value(), 10, "join", {}).ok);
        auto r = net.call(net[1], game.value(), 0, "move", {Value("e7e5")});
        REQUIRE_FALSE(r.ok);
        CHECK(r.error->code == Errc::NotYourTurn);
        auto outsider = net.call(net[2], game.value(), 0, "move", {Value("e2e4")});
        REQUIRE_FALSE(outsider.ok);
        CHECK(outsider.error->code == Errc::Unauthorized);
    }

    TEST_CASE("the four-move mate settles the pot to white") {
        Net net(2, 100);
        auto game = net.deploy(net[0], 10, "game_betting",
                               {Value("chess"), Value(std::uint64_t{10})});
        REQUIRE(net.call(net[1], game.value(), 10, "join", {}).ok);
        const char* moves[] = {"e2e4", "e7e5", "f1c4", "b8c6", "d1h5", "g8f6", "h5f7"};
        for (int i = 0; i < 7; ++i) {
            auto r = net.call(net[i % 2], game.value(), 0, "move", {Value(moves[i])});
            REQUIRE(r.ok);
        }
        CHECK(phase_of(net, game.value()) == "Settled");
        CHECK(net.ledger.balance(net[0].address) == 110);
        CHECK(net.ledger.balance(net[1].address) == 90);
        CHECK(net.conserved());
    }

    TEST_CASE("cancel, resignation and abandonment all free the pot") {
        // cancel an unjoined game
        {
            Net net(2, 100);
            auto game = net.deploy(net[0], 10, "game_betting",
                                   {Value("tictactoe"), Value(std::uint64_t{10})});
            REQUIRE(net.call(net[0], game.value(), 0, "settle", {}).ok);
            CHECK(net.ledger.balance(net[0].address) == 100);
            CHECK(net.ledger.contracts().held_funds(game.value()) == 0);
        }
        // resignation by the player on turn
        {
            Net net(2, 100);
            auto game = net.deploy(net[0], 10, "game_betting",
                                   {Value("chess"), Value(std::uint64_t{10})});
            REQUIRE(net.call(net[1], game.value(), 10, "join", {}).ok);
            REQUIRE(net.call(net[0], game.value(), 0, "settle", {}).ok); // white resigns
            CHECK(net.ledger.balance(net[1].address) == 110);
        }
        // abandonment: the waiting player claims after the timeout
        {
            Net net(2, 100);
            auto game = net.deploy(net[0], 10, "game_betting",
                                   {Value("chess"), Value(std::uint64_t{10}),
                                    Value(std::uint64_t{5})});
            REQUIRE(net.call(net[1], game.value(), 10, "join", {}).ok);
            auto early = net.call(net[1], game.value(), 0, "settle", {});
            REQUIRE_FALSE(early.ok); // opponent still has time
            net.advance_to(net.ledger.height() + 6);
            REQUIRE(net.call(net[1], game.value(), 0, "settle", {}).ok);
            CHECK(net.ledger.balance(net[1].address) == 110);
        }
    }

    TEST_CASE("tictactoe draw splits the pot") {
        Net net(2, 100);
        auto game = net.deploy(net[0], 10, "game_betting",
                               {Value("tictactoe"), Value(std::uint64_t{10})});
        REQUIRE(net.call(net[1], game.value(), 10, "join", {}).ok);
        int who = 0;
        for (const char* m : {"0", "1", "2", "4", "7", "3", "5", "8", "6"}) {
            REQUIRE(net.call(net[who], game.value(), 0, "move", {Value(m)}).ok);
            who = 1 - who;
        }
        CHECK(phase_of(net, game.value()) == "Drawn");
        CHECK(net.ledger.balance(net[0].address) == 100);
        CHECK(net.ledger.balance(net[1].address) == 100);
    }
}

TEST_SUITE("time lock commitment") {

    TEST_CASE("window denial transfers the penalty; boundaries are inclusive") {
        Net net(2, 100); // human, fridge
        auto tl = net.deploy(net[0], 20, "time_lock_commitment",
                             {Value(net[1].address.display()), Value("snack-drawer"),
                              Value(std::uint64_t{3}), Value(std::uint64_t{6}),
                              Value(std::uint64_t{0}), Value(std::uint64_t{20}),
                              Value(std::uint64_t{30})});
        REQUIRE(tl.is_ok());
        CHECK(net.ledger.balance(net[0].address) == 80);

        auto before = net.call(net[1], tl.value(), 0, "request_access", {}); // height 2
        REQUIRE(before.ok);
        CHECK(before.result.at("allowed") == Value(true));

        auto at3 = net.call(net[1], tl.value(), 0, "request_access", {}); // height 3
        CHECK(at3.result.at("allowed") == Value(false));
        CHECK(net.ledger.balance(net[1].address) == 120); // penalty moved

        net.advance_to(5);
        auto at6 = net.call(net[1], tl.value(), 0, "request_access", {}); // height 6, inclusive
        CHECK(at6.result.at("allowed") == Value(false));
        CHECK(net.ledger.balance(net[1].address) == 120); // escrow already drained

        auto at7 = net.call(net[1], tl.value(), 0, "request_access", {}); // height 7
        CHECK(at7.result.at("allowed") == Value(true));

        // only the device may report attempts
        auto human_asks = net.call(net[0], tl.value(), 0, "request_access", {});
        REQUIRE_FALSE(human_asks.ok);
        CHECK(human_asks.error->code == Errc::Unauthorized);
    }

    TEST_CASE("recurring window repeats modulo the period") {
        Net net(2, 100);
        auto tl = net.deploy(net[0], 5, "time_lock_commitment",
                             {Value(net[1].address.display()), Value("fridge-door"),
                              Value(std::uint64_t{2}), Value(std::uint64_t{3}),
                              Value(std::uint64_t{5}), Value(std::uint64_t{5}),
                              Value(std::uint64_t{40})});
        REQUIRE(tl.is_ok());
        auto snapshot = [&](std::uint64_t height) {
            net.advance_to(height - 1);
            return net.call(net[1], tl.value(), 0, "request_access", {});
        };
        CHECK(snapshot(2).result.at("allowed") == Value(false)); // 2 % 5 = 2
        CHECK(snapshot(4).result.at("allowed") == Value(true));  // 4 % 5 = 4
        CHECK(snapshot(7).result.at("allowed") == Value(false)); // 7 % 5 = 2
        CHECK(snapshot(10).result.at("allowed") == Value(true)); // 10 % 5 = 0
    }

    TEST_CASE("after expiry access is allowed and leftover escrow refunds") {
        Net net(2, 100);
        auto tl = net.deploy(net[0], 20, "time_lock_commitment",
                             {Value(net[1].address.display()), Value("drawer"),
                              Value(std::uint64_t{100}), Value(std::uint64_t{200}),
                              Value(std::uint64_t{0}), Value(std::uint64_t{20}),
                              Value(std::uint64_t{4})});
        // window never hit; agreement lapses at height 1 + 4
        net.advance_to(6);
        auto lapsed = net.call(net[1], tl.value(), 0, "request_access", {});
        CHECK(lapsed.result.at("allowed") == Value(true));

        auto early = net.call(net[0], tl.value(), 0, "expire", {});
        REQUIRE(early.ok); // height 8 > 5 already
        CHECK(net.ledger.balance(net[0].address) == 100);
        CHECK(phase_of(net, tl.value()) == "Expired");

        auto again = net.call(net[0], tl.value(), 0, "expire", {});
        REQUIRE_FALSE(again.ok);
        auto after = net.call(net[1], tl.value(), 0, "request_access", {});
        CHECK(after.result.at("allowed") == Value(true));
    }
}

TEST_SUITE("oracle store") {

    TEST_CASE("publish then query returns the value; latest height wins") {
        auto oracle = testkit::party(55);
        OracleAgent agent(oracle.keys);
        AttestationStore bus;
        bus.add(agent.publish(oracle.keys, "price:oil-change", Value(std::uint64_t{80}), 5)
                    .value());
        bus.add(agent.publish(oracle.keys, "price:oil-change", Value(std::uint64_t{95}), 9)
                    .value());
        bus.add(agent.publish(oracle.keys, "price:tires", Value(std::uint64_t{300}), 7).value());

        auto latest = bus.query_latest("price:oil-change");
        REQUIRE(latest.has_value());
        CHECK(latest->value == Value(std::uint64_t{95}));
        CHECK(latest->height == 9);
        CHECK_FALSE(bus.query_latest("price:unknown").has_value());
    }

    TEST_CASE("verification binds the oracle address; foreign keys cannot publish") {
        auto oracle = testkit::party(56);
        auto other = testkit::party(57);
        OracleAgent agent(oracle.keys);
        auto att = agent.publish(oracle.keys, "s", Value(true), 1).value();
        CHECK(verify_attestation(att, oracle.address));
        CHECK_FALSE(verify_attestation(att, other.address));

        auto stolen = agent.publish(other.keys, "s", Value(true), 1);
        REQUIRE(stolen.is_err());
        CHECK(stolen.error().code == Errc::Unauthorized);
    }

    TEST_CASE("attestation bytes round-trip") {
        auto oracle = testkit::party(58);
        OracleAgent agent(oracle.keys);
        auto att = agent.publish(oracle.keys, "subject:x", Value(Bytes{1, 2, 3}), 4).value();
        auto back = Attestation::decode(att.encode());
        REQUIRE(back.is_ok());
        CHECK(back.value().subject == "subject:x");
        CHECK(back.value().value == Value(Bytes{1, 2, 3}));
        CHECK(back.value().height == 4);
        CHECK(verify_attestation(back.value(), oracle.address));
    }
}
