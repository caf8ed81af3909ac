"""Writes the reference floor plan used by the bundled scenarios.

Usage: make_reference_building.py <out.yaml> [base_load_watts]
"""
import sys

out_path = sys.argv[1]
base_load = float(sys.argv[2]) if len(sys.argv) > 2 else 5000.0

lights, computers, rooms = [], [], []


def room(rid, kind, desks, n_lights, n_computers):
    ls = [f"L{len(lights) + i + 1:03d}" for i in range(n_lights)]
    cs = [f"C{len(computers) + i + 1:03d}" for i in range(n_computers)]
    lights.extend(ls)
    computers.extend(cs)
    rooms.append((rid, kind, desks, ls, cs))


room("corridor", "corridor", 0, 30, 0)
room("kitchen", "kitchen", 0, 4, 0)
room("toilet-1", "toilet", 0, 2, 0)
room("toilet-2", "toilet", 0, 2, 0)
room("lab-1", "lab", 0, 8, 0)
room("lab-2", "lab", 0, 8, 0)
room("meeting", "other_facility", 0, 5, 0)
for i in range(20):
    room(f"office-{i + 1:02d}", "private_office", 1, 2, 1)
for i in range(20):
    room(f"shared-{i + 1:02d}", "shared_office", 10 if i < 13 else 9, 7, 8)

desks = sum(r[2] for r in rooms)
with open(out_path, "w") as f:
    f.write(f"base_load_watts: {base_load:g}\n")
    f.write(f"max_occupants: {desks}\n")
    f.write("light_watts: 60\n")
    f.write("computer_watts: [0, 25, 400]\n")
    f.write("lights: [" + ", ".join(lights) + "]\n")
    f.write("computers: [" + ", ".join(computers) + "]\n")
    f.write("rooms:\n")
    for rid, kind, d, ls, cs in rooms:
        f.write(f"  - {{id: {rid}, kind: {kind}, desk_capacity: {d}, "
                f"lights: [{', '.join(ls)}], computers: [{', '.join(cs)}]}}\n")
