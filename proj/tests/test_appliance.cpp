#include "support.hpp"

#include "officesim/appliance.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace officesim;

namespace {

Light lit()
{
    Light l;
    l.state = LightState::On;
    return l;
}

OccupantEvent ev(EventKind kind, std::size_t target, int agent = 0)
{
    return {0, agent, kind, target};
}

}  // namespace

TEST_CASE("automated light goes off exactly twenty vacant minutes later")
{
    const auto policy = LightingPolicy::automated();
    CHECK(policy.off_delay == 20);
    auto l = lit();
    for (int m = 0; m < 20; ++m) {
        l = light_step(l, false, policy);
        CHECK(l.state == LightState::On);
        CHECK(l.off_delay_remaining.has_value());
    }
    l = light_step(l, false, policy);
    CHECK(l.state == LightState::Off);
    CHECK_FALSE(l.off_delay_remaining.has_value());
}

TEST_CASE("automated countdown resets on reoccupation")
{
    const auto policy = LightingPolicy::automated();
    auto l = lit();
    for (int m = 0; m < 19; ++m) {
        l = light_step(l, false, policy);
    }
    l = light_step(l, true, policy);
    CHECK(l.state == LightState::On);
    CHECK_FALSE(l.off_delay_remaining.has_value());
    for (int m = 0; m < 20; ++m) {
        l = light_step(l, false, policy);
        CHECK(l.state == LightState::On);
    }
    CHECK(light_step(l, false, policy).state == LightState::Off);
}

TEST_CASE("automated light turns on with presence")
{
    Light l;
    l = light_step(l, true, LightingPolicy::automated());
    CHECK(l.state == LightState::On);
    CHECK(l.watts() == 60.0);
}

TEST_CASE("staff-controlled lights ignore presence")
{
    const auto policy = LightingPolicy::staff_controlled();
    for (bool occupied : {true, false}) {
        Light off;
        CHECK(light_step(off, occupied, policy) == off);
        const auto on = lit();
        CHECK(light_step(on, occupied, policy) == on);
    }
    Light l;
    l.room = 3;
    CHECK(light_apply_event(l, ev(EventKind::ManualLightsOn, 3)).state == LightState::On);
    CHECK(light_apply_event(l, ev(EventKind::ManualLightsOn, 4)).state == LightState::Off);
    CHECK(light_apply_event(lit(), ev(EventKind::ManualLightsOff, 0)).state == LightState::Off);
}

TEST_CASE("manual exit decision")
{
    Rng rng(99);
    const int n = 10000;
    int off = 0;
    for (int i = 0; i < n; ++i) {
        off += manual_exit_decision(97, LeaveKind::Long, true, rng) ? 1 : 0;
    }
    CHECK(std::abs(off / double(n) - 0.95) <= 0.0065);

    for (int i = 0; i < 1000; ++i) {
        CHECK_FALSE(manual_exit_decision(100, LeaveKind::Temporary, true, rng));
        CHECK_FALSE(manual_exit_decision(100, LeaveKind::Long, false, rng));
    }
}

TEST_CASE("manual exit decision only draws when it must")
{
    Rng a(5);
    Rng b(5);
    manual_exit_decision(100, LeaveKind::Temporary, true, a);
    manual_exit_decision(100, LeaveKind::Long, false, a);
    CHECK(a.next() == b.next());
}

TEST_CASE("computer transitions and wattage")
{
    Computer c;
    c.owner = 4;
    auto on = computer_apply_event(c, ev(EventKind::SwitchComputerOn, 2, 4), 2);
    CHECK(on.state == ComputerState::On);
    CHECK(on.watts() == 400.0);
    auto standby = computer_apply_event(on, ev(EventKind::ComputerToStandby, 2, 4), 2);
    CHECK(standby.state == ComputerState::Standby);
    CHECK(standby.watts() == 25.0);
    auto off = computer_apply_event(standby, ev(EventKind::SwitchComputerOff, 2, 4), 2);
    CHECK(off.state == ComputerState::Off);
    CHECK(off.watts() == 0.0);

    // All six directed pairs are legal.
    CHECK(computer_apply_event(off, ev(EventKind::ComputerToStandby, 2, 4), 2).state == ComputerState::Standby);
    CHECK(computer_apply_event(standby, ev(EventKind::SwitchComputerOn, 2, 4), 2).state == ComputerState::On);
    CHECK(computer_apply_event(on, ev(EventKind::SwitchComputerOff, 2, 4), 2).state == ComputerState::Off);

    // Foreign events are ignored.
    CHECK(computer_apply_event(on, ev(EventKind::SwitchComputerOff, 3, 4), 2) == on);
    CHECK(computer_apply_event(on, ev(EventKind::SwitchComputerOff, 2, 5), 2) == on);
    CHECK(computer_apply_event(on, ev(EventKind::ManualLightsOff, 2, 4), 2) == on);
}

TEST_CASE("appliance watts")
{
    const auto& b = testing::reference_building();
    auto lights = make_lights(b);
    auto computers = make_computers(b);
    CHECK(appliance_watts(lights, computers) == ApplianceWatts{0, 0});
    for (auto& l : lights) {
        l.state = LightState::On;
    }
    CHECK(appliance_watts(lights, computers) == ApplianceWatts{14340, 0});

    lights = make_lights(b);
    computers[0].state = ComputerState::On;
    computers[1].state = ComputerState::Standby;
    CHECK(appliance_watts(lights, computers) == ApplianceWatts{0, 425});
}
