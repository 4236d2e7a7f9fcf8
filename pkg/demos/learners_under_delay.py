"""The four delayed learners side by side on one synthetic stream.

Shows the common protocol (play, get charged, absorb whatever feedback
arrived) and how the adaptive Newton-step learning rate reacts when delays
appear mid-stream.

Run:  python demos/learners_under_delay.py
"""

import numpy as np

from delayed_oco import (
    BallDomain,
    DelayedFtrl,
    DelayedOmd,
    DelayedOns,
    DelayedVaw,
    GradientPacket,
    LabelPacket,
    TraceDelay,
    arrivals_at,
    realized_schedule,
)

rng = np.random.default_rng(0)
T, n = 60, 3
dom = BallDomain(n, 2.0)

# delays: prompt feedback for 20 rounds, then a blackout, then prompt again
delays = [0] * 20 + [25] * 10 + [0] * 30
schedule = realized_schedule(TraceDelay(tuple(delays)), T)

z = rng.uniform(-1, 1, size=(T, n))
y = z.sum(axis=1) + 0.3 * rng.standard_normal(T)


def squared_loss(t, x):
    return 0.5 * (float(z[t - 1] @ x) - y[t - 1]) ** 2


def squared_grad(t, x):
    return (float(z[t - 1] @ x) - y[t - 1]) * z[t - 1]


def ridge_loss(t, x):
    return squared_loss(t, x) + 0.5 * float(x @ x)


def ridge_grad(t, x):
    return squared_grad(t, x) + x


ftrl = DelayedFtrl(n, dom, strong_convexity=1.0)
omd = DelayedOmd(n, dom, strong_convexity=1.0)
ons = DelayedOns(n, dom, gradient_bound=8.0, exp_concavity=0.02, horizon=T)
vaw = DelayedVaw(n, gamma=1.0, horizon=T)

pending = {}
print(" t  |m_t|  eta_ons   ftrl loss   omd loss    ons loss    vaw loss")
for t in range(1, T + 1):
    arrival = t + schedule.delays[t - 1]
    x_ftrl = ftrl.start_round(t)
    x_omd = omd.start_round(t)
    x_ons = ons.start_round(t)
    x_vaw = vaw.predict(t, z[t - 1])
    losses = (
        ridge_loss(t, x_ftrl),
        ridge_loss(t, x_omd),
        squared_loss(t, x_ons),
        squared_loss(t, x_vaw),
    )
    pending[t] = (
        GradientPacket(t, ridge_grad(t, x_ftrl), np.array(x_ftrl), arrival),
        GradientPacket(t, ridge_grad(t, x_omd), np.array(x_omd), arrival),
        GradientPacket(t, squared_grad(t, x_ons), np.array(x_ons), arrival),
        LabelPacket(t, z[t - 1], float(y[t - 1]), arrival),
    )
    batch = [pending.pop(tau) for tau in sorted(arrivals_at(schedule, t))]
    ftrl.finish_round(t, [b[0] for b in batch])
    omd.finish_round(t, [b[1] for b in batch])
    ons.finish_round(t, [b[2] for b in batch])
    vaw.finish_round(t, [b[3] for b in batch])
    if t % 5 == 0:
        print(
            f"{t:3d}  {ons.tracker.missing_at_start:4d}  {ons.etas[-1]:8.2f}"
            f"  {losses[0]:9.4f}  {losses[1]:9.4f}"
            f"  {losses[2]:9.4f}  {losses[3]:9.4f}"
        )

print()
print("Rounds 21-30 send their feedback 25 rounds late: |m_t| climbs, the")
print("adaptive rate steps up once the blackout is perceived, and every")
print("learner keeps playing from whatever it has observed so far.")
