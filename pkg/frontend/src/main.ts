// Browser bootstrap: one container, event delegation on data-action
// attributes, full re-render after every state change. The interesting
// logic all lives in controller.ts and render.ts where the tests are.

import { ApiClient } from "./api";
import { ReviewController } from "./controller";
import { renderApp } from "./render";

function mount(root: HTMLElement, baseUrl: string, reviewerId: string): void {
  const controller = new ReviewController(new ApiClient(baseUrl), reviewerId);

  const repaint = () => {
    root.innerHTML = renderApp(controller.state);
  };

  root.addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
    if (!target) return;
    const action = target.dataset["action"];
    const candidate = target.dataset["candidate"] ?? "";
    void handle(action, candidate, target).then(repaint);
    if (action !== "open") event.preventDefault();
  });

  async function handle(action: string | undefined, candidate: string, el: HTMLElement) {
    switch (action) {
      case "next-batch":
      case "retry-batch":
        await controller.loadNextBatch();
        break;
      case "open":
        await controller.openScorecard(candidate);
        break;
      case "request-decision": {
        const form = el.closest("form");
        const verdict = (form?.querySelector("[name=verdict]") as HTMLSelectElement)?.value ?? "";
        const notes = (form?.querySelector("[name=notes]") as HTMLInputElement)?.value ?? "";
        try {
          controller.requestDecision(candidate, verdict, notes);
        } catch {
          window.alert("Choose a verdict first.");
        }
        break;
      }
      case "confirm-decision":
        await controller.confirmPending();
        break;
      case "cancel-decision":
        controller.cancelPending();
        break;
      case "conflict-reload":
        await controller.reloadAfterConflict();
        break;
      case "conflict-dismiss":
        controller.dismissConflict();
        break;
      case "send-feedback": {
        const input = document.querySelector<HTMLInputElement>("[name=feedback]");
        try {
          await controller.submitFeedback(input?.value ?? "");
          if (input) input.value = "";
        } catch {
          window.alert("Feedback text is required.");
        }
        break;
      }
      default:
        break;
    }
  }

  void controller.loadNextBatch().then(repaint);
  repaint();
}

const container = document.getElementById("app");
if (container) {
  const base = container.dataset["apiBase"] ?? "";
  mount(container, base, container.dataset["reviewer"] ?? "reviewer");
}

export { mount };
