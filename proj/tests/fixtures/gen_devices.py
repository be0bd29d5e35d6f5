#!/usr/bin/env python3
"""Writes the fixture device definitions under devices/.

Screens are described as element lists; bounds are laid out as a vertical
list (or an icon grid for launchers). Rerun after editing and commit both
this script and its output.
"""
import copy
import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent / "devices"


def el(eid, text="", to=None, toggle=False, checked=False, desc="", hint="",
       clickable=True, toggle_to=None):
    return {"id": eid, "text": text, "desc": desc, "hint": hint,
            "clickable": clickable, "toggle": toggle, "checked": checked,
            "to": to, "toggle_to": toggle_to}


def title(text):
    return el("title", text, clickable=False)


def screen(sid, elements, viewport=0, delay=0, grid=False):
    return {"id": sid, "elements": elements, "viewport_rows": viewport,
            "ready_delay": delay, "grid": grid}


def layout(scr, size):
    w, h = size
    out = []
    transitions = []
    margin = w // 20
    if scr["grid"]:
        cols, cell = 4, w // 4
        for i, e in enumerate(scr["elements"]):
            r, c = divmod(i, cols)
            out.append((e, [c * cell + cell // 8, 300 + r * (cell + 80),
                            cell * 3 // 4, cell * 3 // 4]))
    else:
        row_h = h // 12
        for i, e in enumerate(scr["elements"]):
            out.append((e, [margin, 160 + i * row_h, w - 2 * margin,
                            row_h - 16]))
    elements = []
    for e, bounds in out:
        elements.append({
            "id": e["id"], "text": e["text"], "content_desc": e["desc"],
            "hint_text": e["hint"], "bounds": bounds,
            "clickable": e["clickable"], "toggleable": e["toggle"],
            "checked": e["checked"]})
        if e["to"]:
            transitions.append({"element": e["id"], "action": "tap",
                                "to": e["to"]})
        for action in ("toggle_on", "toggle_off"):
            if e["toggle_to"]:
                transitions.append({"element": e["id"], "action": action,
                                    "to": e["toggle_to"]})
    return {"id": scr["id"], "ready_delay": scr["ready_delay"],
            "viewport_rows": scr["viewport_rows"], "elements": elements,
            "transitions": transitions}


def device(did, size, screens, apps, home="home"):
    return {"id": did, "screen_size": list(size), "home": home, "apps": apps,
            "screens": [layout(s, size) for s in screens]}


def find(screens, sid):
    return next(s for s in screens if s["id"] == sid)


def pixel_screens():
    """Reference phone layout; drifted devices are edits of this one."""
    s = []
    s.append(screen("home", [
        el("icon_phone", "Phone"), el("icon_messages", "Messages"),
        el("icon_chrome", "Chrome"), el("icon_camera", "Camera"),
        el("icon_photos", "Photos"), el("icon_play", "Play Store"),
        el("icon_clock", "Clock", to="clock_home"),
        el("icon_settings", "Settings", to="settings_home"),
    ], grid=True))
    s.append(screen("settings_home", [
        title("Settings"),
        el("search", hint="Search settings"),
        el("network_internet", "Network & internet", to="network",
           desc="Wi-Fi, mobile, data usage, hotspot"),
        el("connected_devices", "Connected devices", to="connected",
           desc="Bluetooth, NFC"),
        el("apps_notifications", "Apps & notifications", to="apps_notif",
           desc="Recent apps, default apps"),
        el("battery", "Battery", to="battery"),
        el("display", "Display", to="display",
           desc="Wallpaper, sleep, font size"),
        el("sound", "Sound", to="sound", desc="Volume, vibration"),
        el("storage", "Storage", to="storage"),
        el("privacy", "Privacy", to="privacy"),
        el("location", "Location", to="location"),
        el("security", "Security", to="security"),
        el("accounts", "Accounts"),
        el("accessibility", "Accessibility"),
        el("wellbeing", "Digital Wellbeing & parental controls"),
        el("google", "Google"),
        el("system", "System", to="system", desc="Languages, gestures, time"),
        el("about", "About phone", to="about"),
    ], viewport=6))
    s.append(screen("network", [
        title("Network & internet"),
        el("wifi", "Wi-Fi", to="wifi"),
        el("mobile_network", "Mobile network"),
        el("data_usage", "Data usage", to="data_usage"),
        el("hotspot", "Hotspot & tethering"),
        el("airplane", "Airplane mode", toggle=True),
        el("show_all", "Show all items", to="network_more"),
    ]))
    s.append(screen("network_more", [
        title("Network & internet"),
        el("wifi", "Wi-Fi", to="wifi"),
        el("mobile_network", "Mobile network"),
        el("data_usage", "Data usage", to="data_usage"),
        el("hotspot", "Hotspot & tethering"),
        el("airplane", "Airplane mode", toggle=True),
        el("vpn", "VPN", to="vpn"),
        el("private_dns", "Private DNS"),
        el("data_saver", "Data saver", to="data_saver"),
        el("mobile_plan", "Mobile plan"),
    ], viewport=4))
    s.append(screen("wifi", [
        title("Wi-Fi"),
        el("use_wifi", "Use Wi-Fi", toggle=True, checked=True),
        el("home_net", "HomeNet"),
        el("add_network", "Add network"),
        el("saved_networks", "Saved networks"),
        el("wifi_prefs", "Wi-Fi preferences"),
    ]))
    s.append(screen("vpn", [
        title("VPN"),
        el("add_vpn", "Add VPN", desc="Add"),
        el("always_on", "Always-on VPN", toggle=True),
    ]))
    s.append(screen("data_usage", [
        title("Data usage"),
        el("usage_summary", "2.1 GB used", clickable=False),
        el("data_saver", "Data saver", to="data_saver"),
        el("mobile_data", "Mobile data", toggle=True, checked=True),
        el("app_data_usage", "App data usage"),
        el("billing_cycle", "Data warning & limit"),
    ]))
    s.append(screen("data_saver", [
        title("Data saver"),
        el("use_data_saver", "Use Data saver", toggle=True),
        el("unrestricted", "Unrestricted data"),
    ]))
    s.append(screen("connected", [
        title("Connected devices"),
        el("pair_new", "Pair new device"),
        el("conn_prefs", "Connection preferences", to="conn_prefs",
           desc="Bluetooth, NFC, Cast"),
    ]))
    s.append(screen("conn_prefs", [
        title("Connection preferences"),
        el("bluetooth", "Bluetooth", to="bluetooth"),
        el("cast", "Cast"),
        el("printing", "Printing"),
        el("nfc", "NFC", toggle=True),
        el("nearby_share", "Nearby Share"),
    ]))
    s.append(screen("bluetooth", [
        title("Bluetooth"),
        el("use_bluetooth", "Use Bluetooth", toggle=True),
        el("device_name", "Device name"),
        el("pair_bt", "Pair new device"),
    ]))
    s.append(screen("apps_notif", [
        title("Apps & notifications"),
        el("recent", "Recently opened apps", clickable=False),
        el("see_all_apps", "See all apps", to="all_apps"),
        el("screen_time", "Screen time"),
        el("notifications", "Notifications", to="notifications"),
        el("default_apps", "Default apps"),
        el("permissions", "App permissions"),
        el("special_access", "Special app access"),
    ]))
    s.append(screen("all_apps", [
        title("App info"),
        el("app_calendar", "Calendar"),
        el("app_camera", "Camera"),
        el("app_chrome", "Chrome"),
        el("app_clock", "Clock"),
        el("app_maps", "Maps"),
        el("app_messages", "Messages"),
        el("app_photos", "Photos"),
        el("app_youtube", "YouTube"),
    ], viewport=5))
    s.append(screen("notifications", [
        title("Notifications"),
        el("notif_history", "Notification history"),
        el("bubbles", "Bubbles"),
        el("lock_screen", "On lock screen", to="lock_screen"),
        el("sensitive", "Sensitive notifications", toggle=True),
        el("snooze", "Allow notification snoozing", toggle=True),
        el("dots", "Notification dot on app icon", toggle=True, checked=True),
    ]))
    s.append(screen("lock_screen", [
        title("On lock screen"),
        el("show_all_content", "Show all notification content"),
        el("hide_silent", "Hide silent conversations and notifications"),
        el("dont_show", "Don't show notifications at all"),
    ]))
    s.append(screen("battery", [
        title("Battery"),
        el("battery_level", "82%", clickable=False),
        el("battery_saver", "Battery Saver", to="battery_saver"),
        el("adaptive_battery", "Adaptive Battery", toggle=True, checked=True),
        el("battery_pct", "Battery percentage", toggle=True),
    ]))
    s.append(screen("battery_saver", [
        title("Battery Saver"),
        el("use_battery_saver", "Use Battery Saver", toggle=True),
        el("set_schedule", "Set a schedule"),
        el("turn_off_charged", "Turn off when charged", toggle=True,
           checked=True),
    ]))
    s.append(screen("display", [
        title("Display"),
        el("brightness", "Brightness level"),
        el("dark_theme", "Dark theme", toggle=True),
        el("night_light", "Night Light"),
        el("adaptive_brightness", "Adaptive brightness", toggle=True,
           checked=True),
        el("wallpaper", "Wallpaper"),
        el("screen_timeout", "Screen timeout"),
        el("display_advanced", "Advanced", to="display_advanced",
           desc="Auto-rotate, font size"),
    ], viewport=6))
    s.append(screen("display_advanced", [
        title("Display"),
        el("auto_rotate", "Auto-rotate screen", toggle=True),
        el("font_size", "Font size"),
        el("display_size", "Display size"),
        el("screen_saver", "Screen saver"),
    ]))
    s.append(screen("sound", [
        title("Sound"),
        el("media_volume", "Media volume"),
        el("call_volume", "Call volume"),
        el("ring_volume", "Ring & notification volume"),
        el("dnd", "Do Not Disturb", to="dnd"),
        el("live_caption", "Live Caption"),
        el("sound_advanced", "Advanced", to="sound_advanced",
           desc="Vibrate for calls, ringtone"),
    ]))
    s.append(screen("sound_advanced", [
        title("Sound"),
        el("vibrate_calls", "Vibrate for calls", toggle=True),
        el("ringtone", "Phone ringtone"),
        el("default_notif_sound", "Default notification sound"),
        el("alarm_sound", "Default alarm sound"),
    ]))
    s.append(screen("dnd", [
        title("Do Not Disturb"),
        el("dnd_people", "People"),
        el("dnd_apps", "Apps"),
        el("dnd_schedules", "Schedules"),
        el("dnd_turn_on", "Turn on now", toggle=True),
    ]))
    s.append(screen("storage", [
        title("Storage"),
        el("free_up", "Free up space"),
        el("smart_storage", "Smart Storage", toggle=True),
    ]))
    s.append(screen("privacy", [
        title("Privacy"),
        el("permission_manager", "Permission manager"),
        el("show_passwords", "Show passwords", toggle=True, checked=True),
        el("lock_screen_privacy", "Lock screen"),
        el("autofill", "Autofill service from Google"),
    ]))
    s.append(screen("location", [
        title("Location"),
        el("use_location", "Use location", toggle=True, checked=True),
        el("recent_access", "Recent access", clickable=False),
        el("app_access", "App access to location"),
        el("location_services", "Location services"),
    ]))
    s.append(screen("security", [
        title("Security"),
        el("screen_lock", "Screen lock"),
        el("find_my_device", "Find My Device"),
        el("security_update", "Security update"),
    ]))
    s.append(screen("system", [
        title("System"),
        el("languages", "Languages & input"),
        el("gestures", "Gestures"),
        el("date_time", "Date & time", to="date_time"),
        el("backup", "Backup"),
        el("reset_options", "Reset options"),
        el("system_update", "System update"),
    ]))
    s.append(screen("date_time", [
        title("Date & time"),
        el("auto_time", "Use network-provided time", toggle=True,
           checked=True),
        el("auto_zone", "Use network-provided time zone", toggle=True,
           checked=True),
        el("time_zone", "Time zone"),
        el("use_24h", "Use 24-hour format", toggle=True),
    ]))
    s.append(screen("about", [
        title("About phone"),
        el("device_name", "Device name"),
        el("phone_number", "Phone number", clickable=False),
        el("android_version", "Android version"),
        el("build_number", "Build number"),
    ]))
    s.append(screen("clock_home", [
        title("Clock"),
        el("tab_alarm", "Alarm"),
        el("tab_clock", "Clock"),
        el("tab_timer", "Timer", to="timer"),
        el("tab_stopwatch", "Stopwatch", to="stopwatch"),
        el("tab_bedtime", "Bedtime"),
    ]))
    s.append(screen("timer", [
        title("Timer"),
        el("keypad", "00h 00m 00s", clickable=False),
        el("timer_start", "Start", desc="Start timer"),
    ]))
    s.append(screen("stopwatch", [
        title("Stopwatch"),
        el("sw_start", "Start", desc="Start stopwatch"),
        el("sw_lap", "Lap"),
    ]))
    return s


APPS = {"settings": "settings_home", "clock": "clock_home"}


def pixel_ref():
    return device("pixel_ref", (1080, 1920), pixel_screens(), APPS)


def pixel_new():
    """Newer OS build: pre-expanded lists, renamed rows, slower loading."""
    s = pixel_screens()
    home = find(s, "settings_home")
    home["ready_delay"] = 2
    apps = next(e for e in home["elements"] if e["id"] == "apps_notifications")
    apps.update(id="apps", text="Apps", desc="Recent apps, default apps",
                to="apps_notif")
    idx = home["elements"].index(apps)
    home["elements"].insert(idx + 1, el("notifications", "Notifications",
                                        to="notifications",
                                        desc="Notification history"))
    find(s, "apps_notif")["elements"][0] = title("Apps")
    find(s, "apps_notif")["elements"] = [
        e for e in find(s, "apps_notif")["elements"]
        if e["id"] != "notifications"]

    net = find(s, "network")
    more = find(s, "network_more")
    net["elements"] = copy.deepcopy(more["elements"])
    net["elements"].insert(8, el("adaptive_conn", "Adaptive connectivity",
                                 toggle=True))
    net["viewport_rows"] = 4
    s.remove(more)
    find(s, "data_saver")["ready_delay"] = 1

    display = find(s, "display")
    adv = find(s, "display_advanced")
    display["elements"] = ([e for e in display["elements"]
                            if e["id"] != "display_advanced"] +
                           adv["elements"][1:])
    display["viewport_rows"] = 6
    s.remove(adv)
    return device("pixel_new", (1080, 1920), s, APPS)


def tablet():
    s = pixel_screens()
    for scr in s:
        scr["viewport_rows"] = 0
    return device("tablet", (1600, 2560), s, APPS)


def galaxy():
    """Vendor skin: renamed labels, moved Do Not Disturb."""
    s = pixel_screens()
    home = find(s, "settings_home")
    for e in home["elements"]:
        if e["id"] == "network_internet":
            e.update(text="Connections", desc="Wi-Fi, Bluetooth, data usage")
        elif e["id"] == "battery":
            e.update(text="Battery and device care")
        elif e["id"] == "sound":
            e.update(desc="Sound mode, ringtone")
        elif e["id"] == "display":
            e.update(desc="Brightness, dark mode")
    sound_idx = [e["id"] for e in home["elements"]].index("sound")
    home["elements"].insert(sound_idx + 1,
                            el("dnd", "Do Not Disturb", to="dnd"))
    snd = find(s, "sound")
    snd["elements"] = [e for e in snd["elements"] if e["id"] != "dnd"]
    net = find(s, "network")
    net["elements"][0] = title("Connections")
    net["elements"].insert(2, el("bluetooth", "Bluetooth", to="bluetooth"))
    for e in find(s, "display")["elements"]:
        if e["id"] == "dark_theme":
            e.update(id="dark_mode", text="Dark mode")
    return device("galaxy", (1080, 2280), s, APPS)


def main():
    OUT.mkdir(exist_ok=True)
    for dev in (pixel_ref(), pixel_new(), tablet(), galaxy()):
        path = OUT / f"{dev['id']}.json"
        path.write_text(json.dumps(dev, indent=1, ensure_ascii=False) + "\n")
        print(path.name)


if __name__ == "__main__":
    main()
