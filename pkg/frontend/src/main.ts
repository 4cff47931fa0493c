import { NotFoundError, ServiceClient } from "./client.js";
import { KEYPAD_ROWS, KEY_HINTS, MOVE_BUTTONS } from "./keypad.js";
import { renderMapSvg } from "./mapRender.js";
import { WalkthroughViewModel } from "./viewmodel.js";
import type { DirectionName, KeySymbol } from "./types.js";

const POLL_TIMEOUT_S = 20;

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("service") ?? "http://127.0.0.1:8000";

const client = new ServiceClient(baseUrl);
const vm = new WalkthroughViewModel();

let walkId: string | null = null;
let commandInFlight = false;
let polling = false;
let stopped = false;

const el = {
  map: document.getElementById("map")!,
  badge: document.getElementById("badge")!,
  destination: document.getElementById("destination")!,
  banner: document.getElementById("banner")!,
  feed: document.getElementById("cue-feed")!,
  keypad: document.getElementById("keypad")!,
  moves: document.getElementById("moves")!,
  overlayToggle: document.getElementById("overlay-toggle") as HTMLInputElement,
  newWalk: document.getElementById("new-walk")!,
};

function renderBanner(): void {
  el.banner.textContent = vm.banner ?? "";
  el.banner.classList.toggle("hidden", vm.banner === null);
}

function render(): void {
  el.badge.textContent = vm.phaseBadge;
  el.badge.dataset.phase = vm.state?.phase ?? "none";
  el.destination.textContent = vm.destinationName
    ? `Destination: ${vm.destinationName}`
    : "No destination set";
  if (vm.map) {
    el.map.innerHTML = renderMapSvg(vm.map, {
      marker: vm.markerPosition,
      destination: vm.destinationTag,
      overlayPath: vm.plannerPath(),
    });
  }
  el.feed.innerHTML = "";
  for (const cue of vm.cues) {
    const li = document.createElement("li");
    li.className = `cue ${cue.kind}`;
    li.textContent = cue.text;
    el.feed.appendChild(li);
  }
  el.feed.scrollTop = el.feed.scrollHeight;
  renderBanner();
}

async function command<T>(run: () => Promise<T>, apply: (resp: T) => void): Promise<void> {
  if (commandInFlight || walkId === null) return;
  commandInFlight = true;    // polling pauses while a command is in flight
  try {
    const resp = await run();
    vm.banner = null;
    apply(resp);
  } catch (err) {
    if (err instanceof NotFoundError) {
      vm.banner = "Session expired. Start a new walk.";
      stopped = true;
    } else {
      vm.banner = "Request failed. Check the service and try again.";
    }
  } finally {
    commandInFlight = false;
    render();
  }
}

function sendKey(symbol: KeySymbol): void {
  void command(() => client.postKey(walkId!, symbol), (resp) => vm.applyEvent(resp));
}

function sendMove(direction: DirectionName): void {
  void command(() => client.postMove(walkId!, direction), (resp) => vm.applyEvent(resp));
}

async function pollLoop(): Promise<void> {
  if (polling) return;
  polling = true;
  while (!stopped && walkId !== null) {
    if (commandInFlight) {
      await new Promise((resolve) => setTimeout(resolve, 50));
      continue;
    }
    try {
      const resp = await client.getState(walkId, vm.sinceSeq, POLL_TIMEOUT_S);
      if (!commandInFlight) {
        vm.applyPoll(resp);
        render();
      }
    } catch (err) {
      if (err instanceof NotFoundError) {
        vm.banner = "Session expired. Start a new walk.";
        stopped = true;
        render();
        break;
      }
      await new Promise((resolve) => setTimeout(resolve, 1000));
    }
  }
  polling = false;
}

function buildControls(): void {
  for (const row of KEYPAD_ROWS) {
    const div = document.createElement("div");
    div.className = "keypad-row";
    for (const symbol of row) {
      const button = document.createElement("button");
      button.textContent = symbol;
      const hint = KEY_HINTS[symbol];
      if (hint) button.title = hint;
      button.addEventListener("click", () => sendKey(symbol));
      div.appendChild(button);
    }
    el.keypad.appendChild(div);
  }
  for (const direction of MOVE_BUTTONS) {
    const button = document.createElement("button");
    button.textContent = direction;
    button.className = `move move-${direction.toLowerCase()}`;
    button.addEventListener("click", () => sendMove(direction));
    el.moves.appendChild(button);
  }
  el.overlayToggle.addEventListener("change", () => {
    vm.showPlannerPath = el.overlayToggle.checked;
    render();
  });
  el.newWalk.addEventListener("click", () => {
    void startWalk();
  });
}

async function startWalk(): Promise<void> {
  try {
    const maps = await client.getMaps();
    const first = maps.maps[0];
    if (!first) {
      vm.banner = "The service has no maps registered.";
      render();
      return;
    }
    vm.setMap(await client.getMap(first.id));
    const created = await client.createWalk(first.id);
    walkId = created.walk_id;
    vm.state = created.state;
    vm.cues = [];
    vm.banner = null;
    stopped = false;
    render();
    void pollLoop();
  } catch {
    vm.banner = `Cannot reach the service at ${baseUrl}.`;
    render();
  }
}

buildControls();
void startWalk();
