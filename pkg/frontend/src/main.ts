// Wire the controller to the page: search box, back button, results pane
// and the component side panel.

import { ApiClient, ApiError } from "./api.js";
import { renderComponentView, renderView } from "./render.js";
import { RefineController } from "./state.js";

const api = new ApiClient("");
const controller = new RefineController(api);

const form = document.getElementById("search-form") as HTMLFormElement;
const input = document.getElementById("search-input") as HTMLInputElement;
const backButton = document.getElementById("back-button") as HTMLButtonElement;
const results = document.getElementById("results") as HTMLElement;
const sidePanel = document.getElementById("side-panel") as HTMLElement;

const handlers = {
  onSelect(suggestion: Parameters<typeof controller.drillDown>[0]): void {
    void controller.drillDown(suggestion);
  },
  onShowComponent(componentId: number): void {
    void showComponent(componentId);
  },
};

controller.onChange((state) => {
  renderView(results, state, handlers);
  input.value = state.query;
  backButton.disabled = !controller.canGoBack();
});

form.addEventListener("submit", (event) => {
  event.preventDefault();
  void controller.search(input.value);
});

backButton.addEventListener("click", () => {
  controller.back();
});

async function showComponent(componentId: number): Promise<void> {
  try {
    const data = await api.component(componentId);
    renderComponentView(sidePanel, data.component_id, data.label_id, data.members);
  } catch (err) {
    sidePanel.replaceChildren();
    const message = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
    const banner = document.createElement("div");
    banner.className = "banner error";
    banner.textContent = message;
    sidePanel.appendChild(banner);
  }
}

renderView(results, controller.state, handlers);
backButton.disabled = true;
