#include "fpm/json_io.hpp"

namespace fpm {

ordered_json system_to_json(const SystemSpec& s) {
    return ordered_json{{"objective_na", s.objective_na},
                        {"magnification", s.magnification},
                        {"focal_length_mm", s.focal_length_mm},
                        {"wavelength_um", s.wavelength_um},
                        {"camera_pitch_um", s.camera_pitch_um},
                        {"camera_pixels", s.camera_pixels}};
}

SystemSpec system_from_json(const ordered_json& j) {
    SystemSpec s;
    s.objective_na = j.at("objective_na").get<double>();
    s.magnification = j.at("magnification").get<double>();
    s.focal_length_mm = j.value("focal_length_mm", s.focal_length_mm);
    s.wavelength_um = j.at("wavelength_um").get<double>();
    s.camera_pitch_um = j.at("camera_pitch_um").get<double>();
    s.camera_pixels = j.at("camera_pixels").get<int>();
    return s;
}

ordered_json array_to_json(const LedArraySpec& a) {
    return ordered_json{{"side_count", a.side_count},
                        {"led_pitch_mm", a.led_pitch_mm},
                        {"distance_mm", a.distance_mm}};
}

LedArraySpec array_from_json(const ordered_json& j) {
    LedArraySpec a;
    a.side_count = j.at("side_count").get<int>();
    a.led_pitch_mm = j.at("led_pitch_mm").get<double>();
    a.distance_mm = j.at("distance_mm").get<double>();
    return a;
}

ordered_json grid_to_json(const GridSpec& g) {
    return ordered_json{{"pixels", g.pixels}, {"pitch_um", g.pitch_um}};
}

GridSpec grid_from_json(const ordered_json& j) {
    return GridSpec{j.at("pixels").get<int>(), j.at("pitch_um").get<double>()};
}

ordered_json plan_to_json(const IlluminationPlan& p) {
    ordered_json entries = ordered_json::array();
    for (const PlanEntry& e : p.entries) {
        entries.push_back(ordered_json{{"i", e.led.i},
                                       {"j", e.led.j},
                                       {"sin_tx", e.sin_tx},
                                       {"sin_ty", e.sin_ty},
                                       {"shift_px_u", e.shift_u_px},
                                       {"shift_px_v", e.shift_v_px},
                                       {"shift_px_u_exact", e.shift_u_px_exact},
                                       {"shift_px_v_exact", e.shift_v_px_exact},
                                       {"bright_field", e.bright_field}});
    }
    return ordered_json{{"array", array_to_json(p.array)},
                        {"mode", to_string(p.mode)},
                        {"flip_half", p.flip_half},
                        {"entries", std::move(entries)}};
}

IlluminationPlan plan_from_json(const ordered_json& j) {
    IlluminationPlan p;
    p.array = array_from_json(j.at("array"));
    p.mode = plan_mode_from_string(j.at("mode").get<std::string>());
    p.flip_half = j.value("flip_half", false);
    for (const auto& je : j.at("entries")) {
        PlanEntry e;
        e.led = LedIndex{je.at("i").get<int>(), je.at("j").get<int>()};
        e.sin_tx = je.at("sin_tx").get<double>();
        e.sin_ty = je.at("sin_ty").get<double>();
        e.shift_u_px = je.at("shift_px_u").get<int>();
        e.shift_v_px = je.at("shift_px_v").get<int>();
        e.shift_u_px_exact = je.value("shift_px_u_exact", static_cast<double>(e.shift_u_px));
        e.shift_v_px_exact = je.value("shift_px_v_exact", static_cast<double>(e.shift_v_px));
        e.bright_field = je.value("bright_field", true);
        p.entries.push_back(e);
    }
    return p;
}

}  // namespace fpm
